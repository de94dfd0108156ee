import pytest

from pcpp_dichotomy.core import Constraint, ConstraintSet

XOR2 = Constraint.from_string("XOR2", "0110")
EQ2 = Constraint.from_string("EQ2", "1001")
OR2 = Constraint.from_string("OR2", "0111")
OR3 = Constraint.from_string("OR3", "01111111")
NAND = Constraint.from_string("NAND", "1110")
ANDN = Constraint.from_string("ANDN", "0100")
ONE_IN_THREE = Constraint.from_string("1in3", "01101000")
F1 = Constraint.from_string("f1", "0110")
F2 = Constraint.from_string("f2", "1001")


@pytest.fixture
def one_in_three_set():
    return ConstraintSet((ONE_IN_THREE,))


@pytest.fixture
def two_lin():
    return ConstraintSet((F1, F2))


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
