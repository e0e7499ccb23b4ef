import time
from fractions import Fraction

import pytest

from affvoa.pbw import VacuumModule, singular_vectors

ACCEPTANCE_LINES: list[str] = []
TIMINGS: dict[str, float] = {}

K_M1 = Fraction(-7, 3)


@pytest.fixture(scope="session")
def km1_module():
    return VacuumModule(3, -1)


@pytest.fixture(scope="session")
def km1_singular(km1_module):
    """Solver output for k = -1, n = 3 at depth 3: (basis at 2a1+a2, basis at a1+2a2)."""
    v1 = singular_vectors(-1, 3, 3, (2, 1), module=km1_module)
    v2 = singular_vectors(-1, 3, 3, (1, 2), module=km1_module)
    return v1, v2


@pytest.fixture(scope="session")
def m1_module():
    return VacuumModule(3, K_M1)


@pytest.fixture(scope="session")
def m1_singular(m1_module):
    """Depth-9 singular vectors at k = -7/3; about a minute of exact linear algebra."""
    started = time.perf_counter()
    v1 = singular_vectors(K_M1, 3, 9, (2, 1), module=m1_module)
    v2 = singular_vectors(K_M1, 3, 9, (1, 2), module=m1_module)
    TIMINGS["m1_singular"] = time.perf_counter() - started
    return v1, v2


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
