"""Certificate serialization: deterministic JSON and an aligned text table."""

from __future__ import annotations

import json

from .errors import ValidationError
from .scenarios import Certificate, Check, ScenarioSpec

SCHEMA = "fourfold-cert/1"


def to_dict(cert: Certificate) -> dict:
    return {
        "schema": SCHEMA,
        "scenario": {"id": cert.scenario.id, "params": dict(sorted(cert.scenario.params.items()))},
        "checks": [
            {"desc": c.desc, "expected": c.expected, "computed": c.computed, "pass": c.passed}
            for c in cert.checks
        ],
        "overall": cert.overall,
        "anchors": list(cert.anchors),
    }


def to_json(cert: Certificate) -> str:
    return json.dumps(to_dict(cert), indent=2, ensure_ascii=True) + "\n"


def from_json(text: str | bytes) -> Certificate:
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValidationError(f"unsupported schema {data.get('schema')!r}")
    sc = data["scenario"]
    cert = Certificate(
        ScenarioSpec(sc["id"], dict(sc["params"])),
        [Check(c["desc"], c["expected"], c["computed"], c["pass"]) for c in data["checks"]],
        list(data["anchors"]),
    )
    if cert.overall != data["overall"]:
        raise ValidationError("overall flag disagrees with the check results")
    return cert


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v)


def to_text(cert: Certificate) -> str:
    params = ", ".join(f"{k}={v}" for k, v in sorted(cert.scenario.params.items()))
    rows = [("", "check", "expected", "computed")]
    rows += [("ok" if c.passed else "FAIL", c.desc, _cell(c.expected), _cell(c.computed)) for c in cert.checks]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = [f"scenario {cert.scenario.id} ({params})"]
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)) + "  " + r[3])
    lines = [ln.rstrip() for ln in lines]
    lines.append("anchors:")
    lines += [f"  - {a}" for a in cert.anchors]
    passed = sum(c.passed for c in cert.checks)
    verdict = "PASS" if cert.overall else "FAIL"
    lines.append(f"{verdict} ({passed}/{len(cert.checks)} checks)")
    return "\n".join(lines) + "\n"


def report(cert: Certificate, format: str = "text") -> bytes:
    if format == "json":
        return to_json(cert).encode("ascii")
    if format == "text":
        return to_text(cert).encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")
