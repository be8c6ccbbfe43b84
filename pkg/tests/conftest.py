import pytest

from qstirling.codes import parse_block_tree, parse_code_pair
from qstirling.combinatorics import MultisetSpec
from qstirling.trees import parse_tree

# the worked example: M = {1, 2, 3^2, 4, 5^3, 6, 7^2}
WORKED_M = MultisetSpec((1, 1, 2, 1, 3, 1, 2))
WORKED_TREE = "0(2,7(7(1)),5(5(6,3(3)),5(4)))"
WORKED_WORD = (2, 7, 1, 7, 5, 6, 3, 3, 5, 4, 5)
# block tree decoded by hand from WORKED_P and WORKED_S
WORKED_BLOCK_TREE = "0(2,7(7(1))|5(5(3(3(*)),6|*),5(*|*|4)))"
# psi of the block tree above, worked out by hand; without its half-edges it
# is WORKED_TREE
WORKED_HALF_EDGE_TREE = "0(2,7(7(*,1)),*,5(5(6,*,*,3(3(*))),5(*,*,4,*)),*)"
WORKED_P = "0^2,3_1,5_1^2,5_2^3,7_1"
WORKED_S = "(5_1,1)(5_2,3)(5_1,1)(0,2)(0,1)(7_1,1)(0,1)"


@pytest.fixture
def worked_m():
    return WORKED_M


@pytest.fixture
def worked_tree():
    return parse_tree(WORKED_TREE)


@pytest.fixture
def worked_block_tree():
    return parse_block_tree(WORKED_BLOCK_TREE)


@pytest.fixture
def worked_half_edge_tree():
    return parse_tree(WORKED_HALF_EDGE_TREE)


@pytest.fixture
def worked_code():
    return parse_code_pair(WORKED_P, WORKED_S)


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
