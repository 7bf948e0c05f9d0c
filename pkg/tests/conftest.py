"""Shared fixtures plus the acceptance-criteria reporter.

Acceptance tests record one line per criterion through the ``criterion``
fixture; the collected lines are echoed in the terminal summary so the
verdicts are visible in any pytest run.
"""

import pytest

_RESULTS = []


@pytest.fixture(scope="session")
def criterion():
    def record(number, description, passed, detail=""):
        verdict = "PASS" if passed else "FAIL"
        line = f"[{verdict}] criterion {number:2d}: {description}"
        if detail:
            line += f" ({detail})"
        _RESULTS.append((number, line))
        print(line)
        assert passed, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_RESULTS):
            terminalreporter.write_line(line)
