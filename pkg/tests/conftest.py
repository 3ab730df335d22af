import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[key] = (m.group(2), report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        name, outcome, duration = _CRITERIA[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {key}: {verdict}  {name}  ({duration:.2f} s)")
