import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is not None:
        prev = _results.get(crit, (True, ""))
        _results[crit] = (prev[0] and report.passed, dict(report.user_properties).get("title", ""))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_results):
        ok, title = _results[crit]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {crit}: {title}")


@pytest.fixture
def criterion(record_property):
    def mark(number, title):
        record_property("criterion", number)
        record_property("title", title)
    return mark
