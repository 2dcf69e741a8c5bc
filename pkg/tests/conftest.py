import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from twoclosure.builders import small_group_family  # noqa: E402


@pytest.fixture(scope="session")
def family():
    return small_group_family()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
