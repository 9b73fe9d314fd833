import numpy as np
import pytest

from gzsys.sampling import rng_from_seed

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return rng_from_seed(20240601)


@pytest.fixture
def example_n3():
    """The n=3 example: x is Jacobi, y is not, both over the tower {0}, {-1, 1}, {-sqrt2, 0, sqrt2}."""
    x = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
    y = np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]], dtype=float)
    return x, y


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
