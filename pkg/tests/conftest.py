import pytest

_criteria: dict[str, tuple] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        note = getattr(item, "criterion_note", "")
        _criteria[item.nodeid] = (number, title, "PASS" if report.passed else "FAIL", note)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, verdict, note in sorted(_criteria.values()):
        line = f"criterion {number:>2} {verdict}  {title}"
        if note:
            line += f"  [{note}]"
        terminalreporter.write_line(line)
