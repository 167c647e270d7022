"""Shared pytest wiring: the acceptance criteria summary block.

test_acceptance.py records one line per criterion here; the hook prints
them after the test run so the pass/fail status of every criterion is
visible in one place regardless of pytest's capture settings.
"""

CRITERION_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERION_LINES):
        terminalreporter.write_line(CRITERION_LINES[number])
