import numpy as np
import pytest

from gapdescent.game import PayoffMatrix, StrategyProfile, duality_gap


def difference_quotient(R, z, d, eps=1e-8):
    """One-sided difference quotient of the gap along the segment z -> d.

    Kept test-only so solvers can never mistake it for a derivative.
    """
    v0 = duality_gap(R, z)
    x = (1.0 - eps) * z.row.probs + eps * d.row.probs
    y = (1.0 - eps) * z.col.probs + eps * d.col.probs
    v1 = duality_gap(R, StrategyProfile.from_arrays(x, y))
    return (v1 - v0) / eps


def random_profile(rng, m, n):
    x = rng.random(m)
    y = rng.random(n)
    return StrategyProfile.from_arrays(x / x.sum(), y / y.sum())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def pennies():
    return PayoffMatrix(np.array([[1.0, 0.0], [0.0, 1.0]]))


def pytest_terminal_summary(terminalreporter):
    """Emit one PASS/FAIL line per acceptance criterion after the run."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    for line in RESULTS:
        terminalreporter.write_line(line)
