import random
from fractions import Fraction

import pytest

from pdwbc.verification import DEFAULT_SEED, distinct_unit_rationals, generic_lattice, generic_rationals

ACCEPTANCE_LINES = []


def det_cofactor(matrix):
    """Independent determinant: Laplace expansion along the first row."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        total += (-1) ** j * matrix[0][j] * det_cofactor(minor)
    return total


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def acceptance():
    """Call ``acceptance(number, title, passed, detail)`` once per criterion."""

    def record(number, title, passed, detail=""):
        line = f"ACCEPTANCE {number:>2} {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


__all__ = ["det_cofactor", "generic_lattice", "generic_rationals", "distinct_unit_rationals"]
