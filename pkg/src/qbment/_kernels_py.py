"""Pure numpy implementation of the bath hot kernels.

Mirrors ``_ckernels.pyx`` function by function; see :mod:`qbment.kernels`.
"""

import numpy as np


def _expm1_over(c, t):
    """``(exp(c t) - 1) / c`` for complex ``c``, accurate near ``c t = 0``."""
    z = c * t
    x = z.real
    y = z.imag
    num = (np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2
           + 1j * np.exp(x) * np.sin(y))
    small = np.abs(z) < 1e-8
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, t * (1.0 + 0.5 * z), num / np.where(small, 1.0, c))
    return out


def response_pair(w, t, omega, gamma):
    """Closed-form ``int_0^t g_a(u) exp(-i w u) du`` for ``a = 1, 2``.

    Returns two complex arrays shaped like ``w``.  Multiplying both by the
    common phase ``exp(i w t)`` gives the forward transforms; the phase drops
    out of every bilinear product used downstream.
    """
    w = np.asarray(w, dtype=float)
    wr = np.sqrt((omega - gamma) * (omega + gamma))
    p_plus = complex(-gamma, wr)
    p_minus = complex(-gamma, -wr)
    e_plus = _expm1_over(p_plus - 1j * w, t)
    e_minus = _expm1_over(p_minus - 1j * w, t)
    denom = 2j * wr
    g1 = (e_plus - e_minus) / denom
    g2 = (p_plus * e_plus - p_minus * e_minus) / denom
    return g1, g2


def spectral_weight(w, cutoff, temperature):
    """``w exp(-w/cutoff) coth(w / 2T)``; the coth factor is dropped at ``T = 0``."""
    w = np.asarray(w, dtype=float)
    base = np.exp(-w / cutoff)
    if temperature == 0.0:
        return w * base
    with np.errstate(invalid="ignore", divide="ignore"):
        th = w / np.tanh(0.5 * w / temperature)
    th = np.where(w == 0.0, 2.0 * temperature, th)
    return th * base


def spectral_integrand(w, t, omega, gamma, cutoff, temperature):
    """Integrand of the three independent noise entries at frequencies ``w``.

    Returns an ``(n, 3)`` array with columns
    ``weight * (|F1|^2, Re F1 conj(F2), |F2|^2)``.
    """
    w = np.ascontiguousarray(w, dtype=float)
    f1, f2 = response_pair(w, t, omega, gamma)
    wt = spectral_weight(w, cutoff, temperature)
    out = np.empty((w.size, 3))
    out[:, 0] = wt * (f1.real ** 2 + f1.imag ** 2)
    out[:, 1] = wt * (f1.real * f2.real + f1.imag * f2.imag)
    out[:, 2] = wt * (f2.real ** 2 + f2.imag ** 2)
    return out


def time_double_sums(w, s, q1, q2, chunk=256):
    """Trapezoid-rule double time integrals for every frequency in ``w``.

    ``q1``/``q2`` are quadrature weights already multiplied by the response
    functions sampled at ``t - s``.  For each frequency the three products
    ``sum_jk qa_j qb_k cos w (s_j - s_k)`` are returned as an ``(n, 3)``
    array, using ``cos(a - b) = cos a cos b + sin a sin b`` to factor the
    double sum.
    """
    w = np.ascontiguousarray(w, dtype=float)
    s = np.ascontiguousarray(s, dtype=float)
    q = np.stack([q1, q2])
    out = np.empty((w.size, 3))
    for start in range(0, w.size, chunk):
        ws = w[start:start + chunk]
        phase = np.outer(ws, s)
        cs = np.cos(phase) @ q.T
        sn = np.sin(phase) @ q.T
        out[start:start + chunk, 0] = cs[:, 0] ** 2 + sn[:, 0] ** 2
        out[start:start + chunk, 1] = cs[:, 0] * cs[:, 1] + sn[:, 0] * sn[:, 1]
        out[start:start + chunk, 2] = cs[:, 1] ** 2 + sn[:, 1] ** 2
    return out
