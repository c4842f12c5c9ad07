import re
from collections import defaultdict

_acceptance: dict[str, list[str]] = defaultdict(list)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1].split("[")[0]
        _acceptance[name].append(report.outcome)


def _order(name):
    m = re.search(r"criterion_(\d+)([a-z]?)", name)
    return (int(m.group(1)), m.group(2)) if m else (99, name)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=_order):
        outcomes = _acceptance[name]
        passed = sum(o == "passed" for o in outcomes)
        status = "PASS" if passed == len(outcomes) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({passed}/{len(outcomes)} cases)")
