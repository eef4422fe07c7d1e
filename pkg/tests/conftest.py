import random

import pytest

from grunits.coeffs import ZZ
from grunits.groupring import GroupRingElement


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_element(group, ring=ZZ, rng=None, bound=9, density=1.0):
    """Dense random element; coefficients in [-bound, bound] (or residues mod m)."""
    rng = rng or random.Random(0)
    coeffs = []
    for _ in range(group.order):
        if rng.random() > density:
            coeffs.append(0)
        elif ring.is_integers:
            coeffs.append(rng.randint(-bound, bound))
        else:
            coeffs.append(rng.randrange(ring.modulus))
    return GroupRingElement(group, ring, dense=coeffs)


# One line per acceptance criterion, echoed after the run.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
