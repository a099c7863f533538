import pytest

_criteria: dict[str, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    if report.when in ("setup", "call"):
        _criteria.setdefault(marker.args[0], []).append(report.passed)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion this test covers")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split(".")[0])):
        results = _criteria[name]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {name}  ({sum(results)}/{len(results)} checks)")
