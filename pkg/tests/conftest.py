"""Prints one pass/fail line per acceptance criterion at the end of the run."""

_LINES: list[str] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        props = dict(report.user_properties)
        name = props.get("criterion", report.nodeid.split("::")[-1])
        status = "PASS" if report.passed else "FAIL"
        _LINES.append(f"{status}  {name}  {props.get('detail', '')}".rstrip())


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
