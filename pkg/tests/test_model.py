import math

import mpmath as mp
import numpy as np
import pytest
from scipy.stats import qmc

from conftest import random_covariance
from qbment import (ETA, GAMMA, ParameterError, SingularCovariance, SystemParams,
                    apply_mirror, check_covariance, two_mode_squeezed_covariance,
                    wigner_density)


def test_constant_matrices():
    assert np.array_equal(GAMMA.T, -GAMMA)
    assert np.array_equal(GAMMA @ GAMMA, -np.eye(4))
    assert np.array_equal(ETA @ ETA, np.eye(4))


def test_params_validation():
    p = SystemParams(omega=2.0, gamma=0.5)
    assert p.coupling ** 2 == pytest.approx(p.gamma * p.mass, rel=0, abs=1e-15)
    assert p.omega_r == pytest.approx(math.sqrt(4.0 - 0.25))
    for kwargs, name in [({"omega": 0.0}, "omega"), ({"gamma": -0.1}, "gamma"),
                         ({"gamma": 1.0}, "gamma"), ({"cutoff": 0.0}, "cutoff"),
                         ({"temperature": -1.0}, "temperature"), ({"mass": 2.0}, "mass"),
                         ({"omega": float("nan")}, "omega")]:
        with pytest.raises(ParameterError) as info:
            SystemParams(**kwargs)
        assert info.value.name == name


def test_vacuum_covariance():
    assert np.array_equal(two_mode_squeezed_covariance(0.0), 0.5 * np.eye(4))


def test_squeezed_entries_against_high_precision():
    mp.mp.dps = 30
    v = two_mode_squeezed_covariance(0.1)
    c = float(mp.cosh(mp.mpf("0.2")) / 2)
    s = float(mp.sinh(mp.mpf("0.2")) / 2)
    assert np.allclose(np.diag(v), c, rtol=0, atol=1e-12)
    assert abs(v[0, 2] + s) < 1e-12 and abs(v[1, 3] - s) < 1e-12
    assert abs(c - 0.510033) < 1e-6 and abs(s - 0.100668) < 1e-6
    others = v.copy()
    np.fill_diagonal(others, 0.0)
    others[0, 2] = others[2, 0] = others[1, 3] = others[3, 1] = 0.0
    assert not others.any()


@pytest.mark.parametrize("r", np.linspace(-2.0, 2.0, 21))
def test_squeezed_state_is_pure(r):
    assert np.linalg.det(two_mode_squeezed_covariance(r)) == pytest.approx(1 / 16, rel=1e-10)


def test_negative_squeezing_flips_correlations():
    plus, minus = two_mode_squeezed_covariance(0.3), two_mode_squeezed_covariance(-0.3)
    flipped = plus.copy()
    flipped[:2, 2:] *= -1
    flipped[2:, :2] *= -1
    assert np.allclose(minus, flipped, rtol=0, atol=1e-15)


def test_mirror_examples():
    assert np.array_equal(apply_mirror(0.5 * np.eye(4)), 0.5 * np.eye(4))
    v = two_mode_squeezed_covariance(0.1)
    m = apply_mirror(v)
    assert m[1, 3] == m[3, 1] == -v[1, 3]
    assert m[0, 2] == v[0, 2]


def test_mirror_properties(rng):
    for _ in range(20):
        v = random_covariance(rng)
        m = apply_mirror(v)
        assert np.allclose(apply_mirror(m), v, rtol=0, atol=0)
        assert np.array_equal(m, m.T)
        assert np.linalg.eigvalsh(m)[0] > 0
        assert np.linalg.det(m) == pytest.approx(np.linalg.det(v), rel=1e-12)


def test_check_covariance_rejects_bad_input():
    with pytest.raises(ValueError):
        check_covariance(np.eye(3))
    bad = 0.5 * np.eye(4)
    bad[0, 1] = 1e-9
    with pytest.raises(ValueError, match="symmetric"):
        check_covariance(bad)
    with pytest.raises(ValueError, match="semidefinite"):
        check_covariance(-np.eye(4))


def test_wigner_at_origin():
    assert wigner_density(0.5 * np.eye(4), np.zeros(4)) == pytest.approx(1 / math.pi ** 2, rel=1e-14)
    v = two_mode_squeezed_covariance(0.4) + 0.1 * np.eye(4)
    expected = 1 / ((2 * math.pi) ** 2 * math.sqrt(np.linalg.det(v)))
    assert wigner_density(v, np.zeros(4)) == pytest.approx(expected, rel=1e-14)


def test_wigner_singular():
    with pytest.raises(SingularCovariance):
        wigner_density(np.zeros((4, 4)), np.zeros(4))


def test_wigner_normalization_quasi_monte_carlo():
    v = two_mode_squeezed_covariance(0.3) + 0.05 * np.eye(4)
    half = 5.0 * math.sqrt(np.linalg.eigvalsh(v)[-1])
    pts = qmc.Sobol(d=4, scramble=True, seed=7).random_base2(m=18)
    x = (2 * pts - 1) * half
    total = wigner_density(v, x).mean() * (2 * half) ** 4
    assert abs(total - 1.0) < 0.01
