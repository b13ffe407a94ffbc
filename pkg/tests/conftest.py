import pytest

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        state = "PASS" if report.outcome == "passed" else "FAIL"
        prev = _CRITERIA.get(num)
        if prev is None or prev[1] == "PASS":
            _CRITERIA[num] = (title, state)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, state = _CRITERIA[num]
        terminalreporter.write_line(f"[{state}] criterion {num:2d}: {title}")
