import numpy as np
import pytest

from qbment import SystemParams


@pytest.fixture
def fig2_params():
    """Damping and cutoff of the second and third figures, zero temperature."""
    return SystemParams(omega=1.0, gamma=0.1, cutoff=50.0, temperature=0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_covariance(rng, scale=1.0):
    """Random physical-looking state with equal diagonal blocks."""
    d = rng.normal(size=(2, 2))
    d = d @ d.T + np.eye(2)
    a = rng.normal(size=(2, 2)) * 0.3
    a = 0.5 * (a + a.T)
    return scale * np.block([[d, a], [a.T, d]])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
