import pytest

_results = {}


def pytest_runtest_logreport(report):
    marks = getattr(report, "acceptance", None)
    if marks is None:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = _results.get(marks[0])
        failed = report.outcome != "passed" or (prev is not None and prev[1] == "FAIL")
        _results[marks[0]] = (marks[1], "FAIL" if failed else "PASS")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.acceptance = (m.kwargs.get("id", m.args[0] if m.args else item.name), m.kwargs.get("title", item.name))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results, key=lambda k: int(k) if str(k).isdigit() else k):
        title, status = _results[key]
        terminalreporter.write_line(f"criterion {key:>2}: {status}  {title}")
