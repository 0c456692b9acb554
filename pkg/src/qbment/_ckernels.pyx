# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the bath hot kernels.

Same signatures and results as ``_kernels_py``; see :mod:`qbment.kernels`.
"""

import numpy as np

from libc.math cimport cos, exp, expm1, fabs, sin, sqrt, tanh

# phase recurrence is re-seeded with direct sin/cos this often
cdef enum:
    RESEED = 64


cdef inline double complex _expm1_over(double cr, double ci, double t,
                                      double em1, double ex) noexcept nogil:
    """``(exp(c t) - 1) / c`` for ``c = cr + i ci`` with ``em1 = expm1(cr t)``, ``ex = exp(cr t)``."""
    cdef double y = ci * t
    cdef double norm = cr * cr + ci * ci
    cdef double sh, ch, re, im
    if norm * t * t < 1e-16:
        return t * (1.0 + 0.5 * (cr + 1j * ci) * t)
    sh = sin(0.5 * y)
    ch = cos(0.5 * y)
    # cos y - 1 = -2 sh^2 and sin y = 2 sh ch keep full relative accuracy
    re = em1 * (1.0 - 2.0 * sh * sh) - 2.0 * sh * sh
    im = ex * 2.0 * sh * ch
    return ((re * cr + im * ci) + 1j * (im * cr - re * ci)) / norm


cdef inline void _pair(double w, double t, double gamma, double wr, double em1, double ex,
                       double complex *f1, double complex *f2) noexcept nogil:
    cdef double complex p_plus = -gamma + 1j * wr
    cdef double complex p_minus = -gamma - 1j * wr
    cdef double complex e_plus = _expm1_over(-gamma, wr - w, t, em1, ex)
    cdef double complex e_minus = _expm1_over(-gamma, -wr - w, t, em1, ex)
    cdef double inv = 0.5 / wr
    # division by 2i wr
    f1[0] = -1j * inv * (e_plus - e_minus)
    f2[0] = -1j * inv * (p_plus * e_plus - p_minus * e_minus)


def response_pair(w, double t, double omega, double gamma):
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], i
    out1 = np.empty(n, dtype=np.complex128)
    out2 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o1 = out1
    cdef double complex[::1] o2 = out2
    cdef double wr = sqrt((omega - gamma) * (omega + gamma))
    cdef double complex a = 0.0, b = 0.0
    cdef double em1 = expm1(-gamma * t), ex = exp(-gamma * t)
    with nogil:
        for i in range(n):
            _pair(wv[i], t, gamma, wr, em1, ex, &a, &b)
            o1[i] = a
            o2[i] = b
    shape = np.shape(w)
    return out1.reshape(shape), out2.reshape(shape)


cdef inline double _weight(double w, double cutoff, double temperature) noexcept nogil:
    cdef double base = exp(-w / cutoff)
    if temperature == 0.0:
        return w * base
    if w == 0.0:
        return 2.0 * temperature * base
    return w / tanh(0.5 * w / temperature) * base


def spectral_weight(w, double cutoff, double temperature):
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], i
    out = np.empty(n)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _weight(wv[i], cutoff, temperature)
    return out.reshape(np.shape(w))


def spectral_integrand(w, double t, double omega, double gamma,
                       double cutoff, double temperature):
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], i
    out = np.empty((n, 3))
    cdef double[:, ::1] o = out
    cdef double wr = sqrt((omega - gamma) * (omega + gamma))
    cdef double complex f1 = 0.0, f2 = 0.0
    cdef double wt
    cdef double em1 = expm1(-gamma * t), ex = exp(-gamma * t)
    with nogil:
        for i in range(n):
            _pair(wv[i], t, gamma, wr, em1, ex, &f1, &f2)
            wt = _weight(wv[i], cutoff, temperature)
            o[i, 0] = wt * (f1.real * f1.real + f1.imag * f1.imag)
            o[i, 1] = wt * (f1.real * f2.real + f1.imag * f2.imag)
            o[i, 2] = wt * (f2.real * f2.real + f2.imag * f2.imag)
    return out


cdef bint _is_uniform(double[::1] s):
    cdef Py_ssize_t m = s.shape[0], k
    if m < 3:
        return False
    cdef double h = (s[m - 1] - s[0]) / (m - 1)
    cdef double tol = 1e-12 * (fabs(s[m - 1]) + fabs(s[0]) + 1e-300)
    for k in range(m):
        if fabs(s[k] - (s[0] + k * h)) > tol:
            return False
    return True


def time_double_sums(w, s, q1, q2, chunk=None):
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef double[::1] a1 = np.ascontiguousarray(q1, dtype=np.float64)
    cdef double[::1] a2 = np.ascontiguousarray(q2, dtype=np.float64)
    cdef Py_ssize_t n = wv.shape[0], m = sv.shape[0], i, k
    out = np.empty((n, 3))
    cdef double[:, ::1] o = out
    cdef bint uniform = _is_uniform(sv)
    cdef double h = (sv[m - 1] - sv[0]) / (m - 1) if m > 1 else 0.0
    cdef double c1, s1, c2, s2, cs = 0.0, sn = 0.0, step_c, step_s, tmp
    with nogil:
        for i in range(n):
            c1 = 0.0
            s1 = 0.0
            c2 = 0.0
            s2 = 0.0
            step_c = cos(wv[i] * h)
            step_s = sin(wv[i] * h)
            for k in range(m):
                if not uniform or k % RESEED == 0:
                    cs = cos(wv[i] * sv[k])
                    sn = sin(wv[i] * sv[k])
                c1 = c1 + a1[k] * cs
                s1 = s1 + a1[k] * sn
                c2 = c2 + a2[k] * cs
                s2 = s2 + a2[k] * sn
                if uniform:
                    tmp = cs * step_c - sn * step_s
                    sn = sn * step_c + cs * step_s
                    cs = tmp
            o[i, 0] = c1 * c1 + s1 * s1
            o[i, 1] = c1 * c2 + s1 * s2
            o[i, 2] = c2 * c2 + s2 * s2
    return out
