"""
Uncertainty, separability and entanglement measures for two-mode Gaussian
states given by their 4x4 covariance matrix.

Matrices are split into 2x2 blocks ``[[D, A], [A^T, D]]``.  The symplectic
eigenvalues follow from the local invariants ``|D|``, ``|A|`` and the full
determinant; the partially transposed spectrum only flips the sign of
``|A|``.  All states produced by the dynamics have equal diagonal blocks, so
that is the only case accepted here.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import AsymmetricBlocks, NegativeDiscriminant
from .model import GAMMA

BLOCK_TOL = 1e-8
DISCRIMINANT_TOL = 1e-12
SEPARABILITY_TOL = 1e-9


@dataclass(frozen=True)
class SymplecticInvariants:
    detD: float
    detA: float
    detFull: float
    zeta_minus: float
    zeta_plus: float
    lambda_minus: float
    lambda_plus: float


@dataclass(frozen=True)
class CanonicalForm:
    """Local canonical form ``[[d, 0, a, 0], [0, d, 0, b], [a, 0, d, 0], [0, b, 0, d]]``.

    Labelled so that ``a >= |b|``; then ``zeta_+^2 = (d+a)(d+b)`` and
    ``lambda_+^2 = (d+a)(d-b)``.
    """

    d: float
    a: float
    b: float

    def matrix(self):
        d, a, b = self.d, self.a, self.b
        return np.array([[d, 0, a, 0], [0, d, 0, b], [a, 0, d, 0], [0, b, 0, d]], dtype=float)

    @property
    def zeta_plus(self):
        return math.sqrt((self.d + self.a) * (self.d + self.b))

    @property
    def zeta_minus(self):
        return math.sqrt(max((self.d - self.a) * (self.d - self.b), 0.0))

    @property
    def lambda_plus(self):
        return math.sqrt((self.d + self.a) * (self.d - self.b))

    @property
    def lambda_minus(self):
        return math.sqrt(max((self.d - self.a) * (self.d + self.b), 0.0))

    def uncertainty_ok(self, tol=SEPARABILITY_TOL):
        """Both ``(d+a)(d+b)`` and ``(d-a)(d-b)`` are at least 1/4."""
        return min((self.d + self.a) * (self.d + self.b),
                   (self.d - self.a) * (self.d - self.b)) >= 0.25 - tol

    def separable(self, tol=SEPARABILITY_TOL):
        """Both ``(d+a)(d-b)`` and ``(d-a)(d+b)`` are at least 1/4."""
        return min((self.d + self.a) * (self.d - self.b),
                   (self.d - self.a) * (self.d + self.b)) >= 0.25 - tol


@dataclass(frozen=True)
class EntanglementReport:
    time: float
    zeta_minus: float
    zeta_plus: float
    lambda_minus: float
    lambda_plus: float
    negativity: float
    log_negativity: float
    separable: bool
    uncertainty_ok: bool


def _blocks(cov):
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        raise ValueError(f"covariance must be 4x4, got shape {cov.shape}")
    d1, d2 = cov[:2, :2], cov[2:, 2:]
    if np.max(np.abs(d1 - d2)) > BLOCK_TOL:
        raise AsymmetricBlocks(
            f"diagonal blocks differ by {np.max(np.abs(d1 - d2)):.3g}")
    return cov, 0.5 * (d1 + d2), cov[:2, 2:]


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def block_determinants(cov):
    """Return ``(|D|, |A|, |cov|)``.

    Raises :class:`AsymmetricBlocks` if the two diagonal blocks differ by
    more than ``BLOCK_TOL``.
    """
    cov, d, a = _blocks(cov)
    return _det2(d), _det2(a), float(np.linalg.det(cov))


def _roots(s, disc, full):
    """Roots ``x`` of ``x^4 - 2 s x^2 + full`` given the discriminant ``s^2 - full``."""
    if disc < -DISCRIMINANT_TOL:
        raise NegativeDiscriminant(
            f"discriminant {disc:.3g} < 0: covariance is not physical")
    if full < -DISCRIMINANT_TOL:
        raise NegativeDiscriminant(f"determinant {full:.3g} < 0")
    big = s + math.sqrt(max(disc, 0.0))
    if big <= 0.0:
        raise NegativeDiscriminant(f"symplectic invariant {s:.3g} is not positive")
    # product form avoids cancellation in s - sqrt(disc)
    small = max(full, 0.0) / big
    return math.sqrt(small), math.sqrt(big)


def _spectra(cov):
    """``((zeta_-, zeta_+), (lambda_-, lambda_+))`` from the block determinants.

    With ``q = tr(adj(D) A)`` and a symmetric ``A`` the full determinant is
    ``(|D|+|A|)^2 - q^2``, so the two discriminants are ``q^2`` and
    ``q^2 - 4|D||A|``.  Using these forms avoids subtracting nearly equal
    numbers when the spectrum is (nearly) degenerate, as it is for pure
    states and for the vacuum, where the textbook form loses half the digits.
    """
    cov, d, a = _blocks(cov)
    det_d, det_a = _det2(d), _det2(a)
    if np.max(np.abs(a - a.T)) > BLOCK_TOL:
        full = float(np.linalg.det(cov))
        s_z, s_l = det_d + det_a, det_d - det_a
        return _roots(s_z, s_z * s_z - full, full), _roots(s_l, s_l * s_l - full, full)
    a = 0.5 * (a + a.T)
    q = d[1, 1] * a[0, 0] + d[0, 0] * a[1, 1] - 2.0 * d[0, 1] * a[0, 1]
    u, v = _det2(d + a), _det2(d - a)
    full = u * v
    zeta = _roots(det_d + det_a, q * q, full)
    lam = _roots(det_d - det_a, q * q - 4.0 * det_d * det_a, full)
    return zeta, lam


def symplectic_spectrum(cov):
    """Symplectic eigenvalues ``(zeta_-, zeta_+)`` of ``cov``.

    Raises :class:`NegativeDiscriminant` for matrices that violate the
    determinant inequalities of a physical state.
    """
    return _spectra(cov)[0]


def ppt_spectrum(cov):
    """Symplectic eigenvalues ``(lambda_-, lambda_+)`` of the partial transpose."""
    return _spectra(cov)[1]


def williamson_spectrum(cov):
    """Symplectic eigenvalues from the matrix ``S G cov G^T S`` with ``S = cov^(1/2)``.

    Works for any positive definite 4x4 matrix (no block structure needed)
    and serves as an independent check of :func:`symplectic_spectrum`.
    Each squared eigenvalue appears twice; the pair averages are returned.
    """
    cov = np.asarray(cov, dtype=float)
    w, v = np.linalg.eigh(0.5 * (cov + cov.T))
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T
    m = root @ GAMMA @ cov @ GAMMA.T @ root
    ev = np.linalg.eigvalsh(0.5 * (m + m.T))
    ev = np.clip(ev, 0.0, None)
    return math.sqrt(0.5 * (ev[0] + ev[1])), math.sqrt(0.5 * (ev[2] + ev[3]))


def symplectic_invariants(cov):
    det_d, det_a, full = block_determinants(cov)
    (zm, zp), (lm, lp) = _spectra(cov)
    return SymplecticInvariants(det_d, det_a, full, zm, zp, lm, lp)


def separability_test(cov, tol=SEPARABILITY_TOL):
    """Peres-Horodecki-Simon test: separable iff ``lambda_- >= 1/2 - tol``."""
    return ppt_spectrum(cov)[0] >= 0.5 - tol


def negativity_measures(lambda_minus):
    """Negativity and logarithmic negativity (bits) from ``lambda_-``.

    >>> negativity_measures(0.25)
    (0.5, 1.0)
    """
    lm = float(lambda_minus)
    if not lm > 0:
        raise ValueError(f"lambda_minus must be positive, got {lambda_minus!r}")
    neg = max(0.0, (1.0 - 2.0 * lm) / (4.0 * lm))
    log_neg = max(0.0, -math.log2(2.0 * lm))
    return neg, log_neg


def _rotation_svd(m):
    """``m = U diag(s1, s2) V^T`` with ``U``, ``V`` proper rotations, ``s1 >= |s2|``."""
    u, s, vt = np.linalg.svd(m)
    s = s.copy()
    if np.linalg.det(u) < 0:
        u[:, 1] *= -1
        s[1] *= -1
    if np.linalg.det(vt) < 0:
        vt[1, :] *= -1
        s[1] *= -1
    return u, s, vt


def canonical_form(cov, return_transform=False):
    """Reduce ``cov`` to :class:`CanonicalForm` by local transformations.

    The sequence is a common rotation diagonalizing ``D``, a common
    squeeze equalizing its entries, and independent rotations of the two
    modes diagonalizing ``A``.  All steps are local symplectic maps, so the
    symplectic spectra of the state and of its partial transpose are kept.

    With ``return_transform=True`` also returns the 4x4 matrix ``T`` with
    ``T cov T^T = form.matrix()``.
    """
    cov, dblk, ablk = _blocks(cov)
    w, u = np.linalg.eigh(dblk)
    if np.linalg.det(u) < 0:
        u[:, 1] *= -1
    if w[0] <= 0:
        raise ValueError("diagonal block is not positive definite")
    rot = u.T
    k = (w[1] / w[0]) ** 0.25
    squeeze = np.diag([k, 1.0 / k])
    local = squeeze @ rot
    d = math.sqrt(w[0] * w[1])
    a_prime = local @ ablk @ local.T
    uu, s, vt = _rotation_svd(a_prime)
    o1, o2 = uu.T, vt
    form = CanonicalForm(d=d, a=float(s[0]), b=float(s[1]))
    if not return_transform:
        return form
    t = np.zeros((4, 4))
    t[:2, :2] = o1 @ local
    t[2:, 2:] = o2 @ local
    return form, t


def entanglement_report(cov, time=0.0, tol=SEPARABILITY_TOL):
    """Collect the per-state quantities reported by a sweep."""
    inv = symplectic_invariants(cov)
    neg, log_neg = negativity_measures(inv.lambda_minus)
    return EntanglementReport(
        time=float(time),
        zeta_minus=inv.zeta_minus,
        zeta_plus=inv.zeta_plus,
        lambda_minus=inv.lambda_minus,
        lambda_plus=inv.lambda_plus,
        negativity=neg,
        log_negativity=log_neg,
        separable=inv.lambda_minus >= 0.5 - tol,
        uncertainty_ok=inv.zeta_minus >= 0.5 - tol,
    )
