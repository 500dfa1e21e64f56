import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion_line():
    """Record the one-line verdict of an acceptance criterion."""
    def record(number, ok, detail, seconds):
        verdict = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES[number] = f"criterion {number}: {verdict} ({seconds:.1f}s) {detail}"
        print(ACCEPTANCE_LINES[number])
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
