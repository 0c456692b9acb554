"""
Backend selection for the bath hot kernels.

The compiled Cython module ``_ckernels`` is used when it was built; otherwise
the numpy implementation in ``_kernels_py`` is loaded.  Setting the
environment variable ``QBMENT_PURE_PYTHON=1`` forces the numpy backend.

Exposed functions (identical in both backends):

``spectral_integrand(w, t, omega, gamma, cutoff, temperature)``
    ``(n, 3)`` integrand of the three independent noise entries.
``response_pair(w, t, omega, gamma)``
    closed-form finite-time transforms of the two response functions.
``spectral_weight(w, cutoff, temperature)``
    bath spectral weight.
``time_double_sums(w, s, q1, q2)``
    trapezoid double time integrals used by the brute-force oracle.
"""

import importlib
import os

from . import _kernels_py


def load_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``.

    Raises ``ImportError`` if the compiled backend is requested but absent.
    """
    if name == "python":
        return _kernels_py
    if name == "cython":
        return importlib.import_module("qbment._ckernels")
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    names = ["python"]
    try:
        load_backend("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def _select():
    if os.environ.get("QBMENT_PURE_PYTHON", "").strip() not in ("", "0"):
        return "python", _kernels_py
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", _kernels_py


BACKEND, _impl = _select()

spectral_integrand = _impl.spectral_integrand
response_pair = _impl.response_pair
spectral_weight = _impl.spectral_weight
time_double_sums = _impl.time_double_sums
