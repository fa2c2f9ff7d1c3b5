import numpy as np
import pytest

from multikplot.sample import BivariateSample


@pytest.fixture
def diag2():
    return BivariateSample.from_pairs([(1, 1), (2, 2)])


@pytest.fixture
def random_sample():
    rng = np.random.default_rng(20240611)
    x = rng.normal(size=200)
    return BivariateSample(x, 0.6 * x + rng.normal(size=200))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
