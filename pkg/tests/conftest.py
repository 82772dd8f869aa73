import numpy as np
import pytest

from robustdrm.quantile import ParametricReference, discretize

ACCEPTANCE_LINES = []


def record(line: str):
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def normal_grid():
    return discretize(ParametricReference("normal", (0.0, 1.0)), 10_000)


@pytest.fixture(scope="session")
def normal_small():
    return discretize(ParametricReference("normal", (0.0, 1.0)), 1000)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
