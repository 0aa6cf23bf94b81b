import pytest

_criterion_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num, title = marker.args
    if report.when == "call":
        _criterion_results[num] = (title, report.passed)
    elif report.when == "setup" and report.failed:
        _criterion_results[num] = (title, False)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criterion_results):
        title, passed = _criterion_results[num]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num} ({title}): {status}")
