import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import segre_matrix  # noqa: E402

from toricmarkov import admit_matrix  # noqa: E402


@pytest.fixture
def a123():
    return admit_matrix([[1, 2, 3]])


@pytest.fixture
def a78910():
    return admit_matrix([[7, 8, 9, 10]])


@pytest.fixture(scope="session")
def segre():
    A = admit_matrix(segre_matrix())
    return A


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
