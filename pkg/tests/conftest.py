import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grassmann_rsets import make_field  # noqa: E402


@pytest.fixture(scope="session")
def gf2():
    return make_field(2)


@pytest.fixture(scope="session")
def gf3():
    return make_field(3)


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
