import pytest

_CRITERIA: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and item.name.startswith("test_criterion"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if report.when == "call" or report.failed:
            status = "PASS" if report.passed else "FAIL"
            prev = _CRITERIA.get(item.nodeid)
            if prev is None or prev[1] == "PASS":
                _CRITERIA[item.nodeid] = (doc, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in sorted(_CRITERIA.values(), key=lambda v: int(v[0].split()[0])):
        terminalreporter.write_line(f"{status}  criterion {doc}")
