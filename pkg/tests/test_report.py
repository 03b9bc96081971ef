import json

import pytest

from fourfold.errors import ValidationError
from fourfold.report import SCHEMA, from_json, report, to_json
from fourfold.scenarios import Certificate, Check, ScenarioSpec, make_spec, run_scenario


@pytest.fixture(scope="module")
def dn3():
    return run_scenario(make_spec("prop-distinctDn", n_max=3))


def test_json_schema_and_order(dn3):
    data = json.loads(report(dn3, "json"))
    assert list(data) == ["schema", "scenario", "checks", "overall", "anchors"]
    assert data["schema"] == SCHEMA == "fourfold-cert/1"
    assert data["scenario"] == {"id": "prop-distinctDn", "params": {"n_max": 3}}
    assert list(data["checks"][0]) == ["desc", "expected", "computed", "pass"]
    div = next(c for c in data["checks"] if c["desc"] == "descended divisibility, n=3")
    assert div["expected"] == 3 and isinstance(div["computed"], int)


def test_json_round_trip(dn3):
    back = from_json(report(dn3, "json"))
    assert back == dn3
    assert report(back, "json") == report(dn3, "json")


def test_json_deterministic():
    a = report(run_scenario(make_spec("thm-main")), "json")
    b = report(run_scenario(make_spec("thm-main")), "json")
    assert a == b


def test_text_report(dn3):
    text = report(dn3, "text").decode()
    lines = text.splitlines()
    assert any("divisibility" in ln and "3" in ln for ln in lines)
    assert lines[-1].startswith("PASS")


def test_failing_certificate():
    cert = Certificate(ScenarioSpec("thm-main", {"p": 4, "m_max": 1}), [Check("x", 1, 2, False)], ["a"])
    assert not cert.overall
    assert report(cert, "text").decode().splitlines()[-1].startswith("FAIL")
    assert json.loads(to_json(cert))["overall"] is False


def test_from_json_rejects_tampering(dn3):
    data = json.loads(report(dn3, "json"))
    data["overall"] = False
    with pytest.raises(ValidationError):
        from_json(json.dumps(data))
    data["schema"] = "other/2"
    with pytest.raises(ValidationError):
        from_json(json.dumps(data))


def test_unknown_format(dn3):
    with pytest.raises(ValueError):
        report(dn3, "xml")
