import re
from collections import defaultdict

CRITERIA = range(1, 9)
_outcomes: dict = defaultdict(list)


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m and (report.when == "call" or report.outcome != "passed"):
        _outcomes[int(m.group(1))].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in CRITERIA:
        seen = _outcomes.get(n)
        if not seen:
            status = "NOT RUN"
        elif all(o == "passed" for o in seen):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}")
