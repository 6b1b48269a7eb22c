from __future__ import annotations

import re

_RESULTS: dict[str, tuple[str, str]] = {}
_CRITERION = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    key = m.group(1)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _RESULTS[key] = (report.outcome, report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=int):
        outcome, name = _RESULTS[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(key):2d}: {verdict}  ({name})")
