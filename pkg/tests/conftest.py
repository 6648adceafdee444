"""Shared fixtures: the acceptance-criteria summary block."""

import pytest

_acceptance_lines = {}


@pytest.fixture
def acceptance():
    """Record a one-line verdict for an acceptance criterion."""

    def record(number: int, title: str, detail: str = ""):
        _acceptance_lines[number] = (title, detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_lines):
        title, detail = _acceptance_lines[number]
        line = f"criterion {number:2d} ({title}): PASS"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
