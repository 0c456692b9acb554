"""
Environment-induced fluctuations of the two oscillators.

The bath adds a noise covariance ``Sigma(t)`` on top of the homogeneous
evolution.  Each independent entry is

    coupling**2 / (2 pi) * int_0^inf dw  weight(w) * Re[F_a(w, t) conj(F_b(w, t))]

with ``weight(w) = w exp(-w/cutoff) coth(w / 2T)`` and
``F_a(w, t) = int_0^t g_a(t - s) exp(i w s) ds`` the finite-time transform of
the center-of-mass position (``a = 1``) or momentum (``a = 2``) response.
Because only the center-of-mass responses enter, all four phase-space
components receive perfectly correlated noise and the relative mode stays
noise free.

:func:`sigma_matrix` evaluates ``F_a`` in closed form and does the frequency
integral with a vectorized adaptive Gauss-Kronrod rule.
:func:`sigma_oracle` is a slow brute-force path (trapezoid rules in both
time variables and in frequency) kept for validation.
"""

import math

import numpy as np

from . import kernels
from .dynamics import mode_g1, mode_g2
from .errors import QuadratureNotConverged
from .model import SystemParams

# 15-point Kronrod nodes (non-negative half) and weights; the odd-indexed
# nodes are the embedded 7-point Gauss rule.
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:7:2] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[9:14:2] = _WG[2::-1]

DEFAULT_CUTOFF_MULTIPLE = 40.0
DEFAULT_MAX_EVALS = 4_000_000


def response_transform(a, omega, t, params: SystemParams):
    """Finite-time transform ``int_0^t g_a(t - s) exp(i omega s) ds``.

    Parameters
    ----------
    a : {1, 2}
        1 for the center-of-mass position response ``g1``, 2 for its
        derivative ``g2``.
    omega : float
        Frequency, ``omega >= 0``.
    t : float
        Time, ``t >= 0``.

    Returns
    -------
    complex
    """
    if a not in (1, 2):
        raise ValueError(f"mode index must be 1 or 2, got {a!r}")
    if t < 0 or omega < 0:
        raise ValueError("omega and t must be non-negative")
    f1, f2 = kernels.response_pair(np.array([float(omega)]), float(t),
                                   params.omega, params.gamma)
    val = (f1 if a == 1 else f2)[0]
    return complex(np.exp(1j * omega * t) * val)


def _gk15(a, b, f):
    """Apply the Kronrod/Gauss pair on every interval ``[a_i, b_i]``."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = f(x.ravel()).reshape(a.size, 15, -1)
    kron = half[:, None] * np.einsum("k,ikc->ic", _KRONROD, vals)
    gauss = half[:, None] * np.einsum("k,ikc->ic", _GAUSS, vals)
    return kron, np.abs(kron - gauss)


def _scale(total):
    # cross entry is measured against the geometric mean of the diagonals
    diag = np.abs(total[[0, 2]])
    return np.array([diag[0], math.sqrt(diag[0] * diag[1]), diag[1]])


def adaptive_integrate(f, breakpoints, tol, max_evals=DEFAULT_MAX_EVALS, floor=0.0):
    """Integrate a vector-valued ``f`` over consecutive ``breakpoints``.

    ``f`` maps a 1-D array of abscissae to an ``(n, 3)`` array.  Intervals
    are bisected until the summed Kronrod-minus-Gauss error of every column
    is at most ``tol`` times its scale (the cross column uses the geometric
    mean of the two diagonal columns), or ``floor`` if larger.

    Returns ``(integral, error, evaluations)``.
    """
    edges = np.asarray(breakpoints, dtype=float)
    a, b = edges[:-1], edges[1:]
    if 15 * a.size > max_evals:
        raise QuadratureNotConverged(
            f"initial partition needs {15 * a.size} evaluations, budget is {max_evals}")
    kron, err = _gk15(a, b, f)
    evals = 15 * a.size
    while True:
        total = kron.sum(axis=0)
        total_err = err.sum(axis=0)
        target = np.maximum(tol * _scale(total), floor)
        if np.all(total_err <= target):
            return total, total_err, evals
        if evals >= max_evals:
            raise QuadratureNotConverged(
                f"adaptive quadrature used {evals} evaluations; error "
                f"{np.max(total_err / np.maximum(target, 1e-300)):.3g} x target")
        # intervals left alone contribute at most half the target
        share = np.max(err / np.maximum(target, 1e-300), axis=1)
        split = share > 0.5 / a.size
        mid = 0.5 * (a[split] + b[split])
        na = np.concatenate([a[split], mid])
        nb = np.concatenate([mid, b[split]])
        nk, ne = _gk15(na, nb, f)
        evals += 15 * na.size
        keep = ~split
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        kron = np.concatenate([kron[keep], nk])
        err = np.concatenate([err[keep], ne])


def tail_bound(t, params: SystemParams, omega_max):
    """Upper bound on the three integrals restricted to ``[omega_max, inf)``.

    Uses ``weight(w) <= (2T + w) exp(-w/cutoff)`` and
    ``|F_a| <= t sup|g_a|``.
    """
    lam = params.cutoff
    tail = lam * math.exp(-omega_max / lam) * (2 * params.temperature + omega_max + lam)
    b1 = t * min(t, 1.0 / params.omega_r)
    b2 = t * params.omega / params.omega_r
    return tail * np.array([b1 * b1, b1 * b2, b2 * b2])


def _breakpoints(lo, hi, t, params):
    width = min(math.pi / t, 0.5 * params.cutoff, hi - lo)
    n = max(1, int(math.ceil((hi - lo) / width)))
    return np.linspace(lo, hi, n + 1)


def _assemble(rr, rp, pp, params):
    """Fill the 4x4 noise matrix from its three physical-unit entries."""
    w = params.omega
    blk = np.array([[rr * w, rp], [rp, pp / w]])
    return np.block([[blk, blk], [blk, blk]])


def sigma_matrix(t, params: SystemParams, tol=1e-8, omega_max=None,
                 max_evals=DEFAULT_MAX_EVALS, return_info=False):
    """Noise covariance ``Sigma(t)`` in normalized coordinates.

    Parameters
    ----------
    t : float
        Time in ns.
    params : SystemParams
    tol : float
        Relative tolerance, ``0 < tol <= 1e-3``.
    omega_max : float, optional
        Fixed frequency truncation.  By default ``40 * cutoff``, doubled until
        the analytic tail bound is below ``tol / 10`` of every entry.
    max_evals : int
        Integrand evaluation budget per frequency segment.
    return_info : bool
        Also return a dict with the truncation frequency, error estimate and
        evaluation count.

    Raises
    ------
    QuadratureNotConverged
        The budget was exhausted before reaching ``tol``.
    """
    t = float(t)
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    if not 0 < tol <= 1e-3:
        raise ValueError(f"tol must lie in (0, 1e-3], got {tol}")
    info = {"omega_max": 0.0, "error": np.zeros(3), "evals": 0}
    if t == 0.0:
        sigma = np.zeros((4, 4))
        return (sigma, info) if return_info else sigma

    def f(w):
        return kernels.spectral_integrand(w, t, params.omega, params.gamma,
                                          params.cutoff, params.temperature)

    fixed = omega_max is not None
    hi = float(omega_max) if fixed else DEFAULT_CUTOFF_MULTIPLE * params.cutoff
    lo = 0.0
    total = np.zeros(3)
    err = np.zeros(3)
    evals = 0
    while True:
        # later segments only need accuracy relative to what is already known
        floor = 0.0 if lo == 0.0 else 0.1 * tol * float(np.min(_scale(total)))
        try:
            val, e, n = adaptive_integrate(f, _breakpoints(lo, hi, t, params), tol,
                                           max_evals=max_evals, floor=floor)
        except QuadratureNotConverged as exc:
            raise QuadratureNotConverged(str(exc), t=t) from None
        total += val
        err += e
        evals += n
        if fixed or np.all(tail_bound(t, params, hi) <= 0.1 * tol * _scale(total)):
            break
        lo, hi = hi, 2 * hi

    pref = params.coupling ** 2 / (2 * math.pi)
    sigma = _assemble(*(pref * total), params)
    if return_info:
        info.update(omega_max=hi, error=pref * err, evals=evals)
        return sigma, info
    return sigma


def oracle_frequency_grid(t, params: SystemParams, step=None):
    """Log-linear frequency grid on ``[0, 40 * cutoff]`` used by the oracle.

    Linear with spacing ``step`` (default ``min(0.02, 0.02 / t)``), plus
    logarithmically spaced points below the first linear step so that a
    small temperature scale ``T`` is resolved.
    """
    top = DEFAULT_CUTOFF_MULTIPLE * params.cutoff
    if step is None:
        step = min(0.02, 0.02 / max(t, 1e-12))
    lin = np.arange(0.0, top + 0.5 * step, step)
    lin[-1] = top
    low = max(1e-3 * min(params.temperature, step) if params.temperature > 0 else 1e-6 * step,
              1e-12)
    logs = np.geomspace(low, step, 60)[:-1]
    return np.unique(np.concatenate([[0.0], logs, lin[1:]]))


def sigma_oracle(t, params: SystemParams, grid=400, omega_grid=None):
    """Brute-force ``Sigma(t)``: trapezoid rules in ``s``, ``s'`` and frequency.

    ``grid`` is the number of time steps on ``[0, t]``; the time
    discretization error falls off as ``grid**-2``.  Slow; intended for
    testing :func:`sigma_matrix`.
    """
    t = float(t)
    if grid < 100:
        raise ValueError(f"grid must be at least 100, got {grid}")
    if t == 0.0:
        return np.zeros((4, 4))
    s = np.linspace(0.0, t, int(grid) + 1)
    trap = np.full(s.size, t / grid)
    trap[[0, -1]] *= 0.5
    q1 = trap * mode_g1(t - s, params)
    q2 = trap * mode_g2(t - s, params)
    w = oracle_frequency_grid(t, params) if omega_grid is None else np.asarray(omega_grid)
    vals = kernels.time_double_sums(w, s, q1, q2)
    vals *= kernels.spectral_weight(w, params.cutoff, params.temperature)[:, None]
    rr, rp, pp = np.trapezoid(vals, w, axis=0) if hasattr(np, "trapezoid") else np.trapz(vals, w, axis=0)
    pref = params.coupling ** 2 / (2 * math.pi)
    return _assemble(pref * rr, pref * rp, pref * pp, params)
