"""
Homogeneous (noise-free) dynamics of the two damped oscillators.

The coupled equations

    R1'' + W^2 R1 + gamma (R1' + R2') = 0
    R2'' + W^2 R2 + gamma (R1' + R2') = 0

separate into an undamped relative mode (``g0``) and a center-of-mass mode
damped at rate ``gamma`` (``g1``).  Everything else is built from these two
impulse responses and their derivatives.
"""

import numpy as np

from .model import SystemParams

_SERIES_CUTOFF = 1e-4


def _sin_over(w, t):
    """``sin(w t) / w`` with a Taylor branch for small ``w t``."""
    t = np.asarray(t, dtype=float)
    x = w * t
    x2 = x * x
    series = t * (1 - x2 / 6 * (1 - x2 / 20 * (1 - x2 / 42 * (1 - x2 / 72))))
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(x) / w
    out = np.where(np.abs(x) < _SERIES_CUTOFF, series, direct)
    return out if out.ndim else float(out)


def mode_g0(t, params: SystemParams):
    """Relative-mode impulse response ``sin(W t)/W``."""
    return _sin_over(params.omega, t)


def mode_g1(t, params: SystemParams):
    """Center-of-mass impulse response ``exp(-gamma t) sin(Wr t)/Wr``."""
    t = np.asarray(t, dtype=float)
    out = np.exp(-params.gamma * t) * _sin_over(params.omega_r, t)
    return out if out.ndim else float(out)


def mode_g2(t, params: SystemParams):
    """Time derivative of :func:`mode_g1`."""
    t = np.asarray(t, dtype=float)
    wr = params.omega_r
    out = np.exp(-params.gamma * t) * (
        np.cos(wr * t) - params.gamma * _sin_over(wr, t))
    return out if out.ndim else float(out)


def _mode_g2_dot(t, params):
    # g1 solves g'' + 2 gamma g' + W^2 g = 0
    return -2 * params.gamma * mode_g2(t, params) - params.omega ** 2 * mode_g1(t, params)


def evolution_matrix(t, params: SystemParams):
    """Propagator of the mean phase-space vector in normalized coordinates.

    Parameters
    ----------
    t : float
        Time in ns, ``t >= 0``.
    params : SystemParams

    Returns
    -------
    (4, 4) ndarray
        ``C`` such that ``<X(t)> = C <X(0)>``.
    """
    t = float(t)
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    gam = params.gamma
    w2 = params.omega ** 2
    g0 = mode_g0(t, params)
    g0d = float(np.cos(params.omega * t))
    g0dd = -w2 * g0
    g1 = mode_g1(t, params)
    g2 = mode_g2(t, params)
    g2d = _mode_g2_dot(t, params)

    # responses to a unit initial momentum of oscillator 1
    h1 = (g1 + g0) / 2
    h3 = (g1 - g0) / 2
    h2 = (g2 + g0d) / 2
    h4 = (g2 - g0d) / 2
    # responses to a unit initial position; dh2/dt(0) = dh4/dt(0) = -gamma
    f1 = h2 + gam * g1
    f3 = h4 + gam * g1
    f2 = (g2d + g0dd) / 2 + gam * g2
    f4 = (g2d - g0dd) / 2 + gam * g2

    c = np.array([[f1, h1, f3, h3],
                  [f2, h2, f4, h4],
                  [f3, h3, f1, h1],
                  [f4, h4, f2, h2]])
    scale = params.scale_vector()
    return c * np.outer(scale, 1.0 / scale)
