"""
Physical parameters and phase-space conventions shared by every module.

Phase-space vectors are ordered ``(X1, X2, X3, X4) = (sqrt(W) R1, P1/sqrt(W),
sqrt(W) R2, P2/sqrt(W))`` with ``W`` the oscillator frequency, so a vacuum
state has covariance ``I/2`` (hbar = 1).  Covariance matrices are plain 4x4
``numpy`` arrays of symmetrized second moments; functions here never modify
their inputs.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ParameterError, SingularCovariance

SYMMETRY_TOL = 1e-12
PSD_FLOOR = -1e-10

#: Commutator matrix, ``[X_i, X_j] = i GAMMA[i, j]``.
GAMMA = np.array([[0.0, 1.0, 0.0, 0.0],
                  [-1.0, 0.0, 0.0, 0.0],
                  [0.0, 0.0, 0.0, 1.0],
                  [0.0, 0.0, -1.0, 0.0]])
GAMMA.flags.writeable = False

#: Partial mirror reflection ``P2 -> -P2``.
ETA = np.diag([1.0, 1.0, 1.0, -1.0])
ETA.flags.writeable = False

#: Exchange of the two oscillators.
SWAP = np.zeros((4, 4))
SWAP[0, 2] = SWAP[1, 3] = SWAP[2, 0] = SWAP[3, 1] = 1.0
SWAP.flags.writeable = False


@dataclass(frozen=True)
class SystemParams:
    """Two identical oscillators coupled to a common 1-D field bath.

    Units are hbar = k_B = 1 with time in ns, so ``omega``, ``gamma``,
    ``cutoff`` and ``temperature`` are all in 1/ns (numerically GHz).

    Parameters
    ----------
    omega : float
        Oscillator angular frequency.
    gamma : float
        Damping rate, ``gamma = coupling**2 / mass``.  Must satisfy
        ``0 <= gamma < omega`` (underdamped).
    cutoff : float
        Exponential spectral cutoff of the bath.
    temperature : float
        Bath temperature, zero allowed.
    """

    omega: float = 1.0
    gamma: float = 0.1
    cutoff: float = 50.0
    temperature: float = 0.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ("omega", "gamma", "cutoff", "temperature", "mass"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ParameterError(f"{name} must be a finite number, got {value!r}", name)
            object.__setattr__(self, name, float(value))
        if self.omega <= 0:
            raise ParameterError(f"omega must be positive, got {self.omega}", "omega")
        if self.gamma < 0:
            raise ParameterError(f"gamma must be non-negative, got {self.gamma}", "gamma")
        if self.gamma >= self.omega:
            raise ParameterError(
                f"gamma={self.gamma} >= omega={self.omega}: only the underdamped "
                "regime is supported", "gamma")
        if self.cutoff <= 0:
            raise ParameterError(f"cutoff must be positive, got {self.cutoff}", "cutoff")
        if self.temperature < 0:
            raise ParameterError(
                f"temperature must be non-negative, got {self.temperature}", "temperature")
        if self.mass != 1.0:
            raise ParameterError("only unit mass oscillators are supported", "mass")

    @property
    def coupling(self):
        """Field coupling constant, ``sqrt(gamma * mass)``."""
        return math.sqrt(self.gamma * self.mass)

    @property
    def omega_r(self):
        """Damped frequency of the center-of-mass mode."""
        return math.sqrt((self.omega - self.gamma) * (self.omega + self.gamma))

    def scale_vector(self):
        """Diagonal of the map from (R1, P1, R2, P2) to normalized coordinates."""
        s = math.sqrt(self.omega)
        return np.array([s, 1.0 / s, s, 1.0 / s])


def check_covariance(cov, name="cov"):
    """Validate a covariance matrix and return it as a float array.

    Raises ``ValueError`` if the matrix is not 4x4, not symmetric to
    ``SYMMETRY_TOL`` or has an eigenvalue below ``PSD_FLOOR``.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        raise ValueError(f"{name} must be 4x4, got shape {cov.shape}")
    if not np.all(np.isfinite(cov)):
        raise ValueError(f"{name} has non-finite entries")
    if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL:
        raise ValueError(f"{name} is not symmetric")
    if np.linalg.eigvalsh(cov)[0] < PSD_FLOOR:
        raise ValueError(f"{name} is not positive semidefinite")
    return cov


def two_mode_squeezed_covariance(r):
    """Covariance of the two-mode squeezed vacuum with squeezing ``r``.

    ``r = 0`` gives the vacuum ``I/2``; the sign of ``r`` flips the sign of
    the inter-mode correlations.
    """
    r = float(r)
    if not math.isfinite(r):
        raise ValueError(f"squeezing must be finite, got {r!r}")
    c = 0.5 * math.cosh(2 * r)
    s = 0.5 * math.sinh(2 * r)
    cov = np.diag([c, c, c, c])
    cov[0, 2] = cov[2, 0] = -s
    cov[1, 3] = cov[3, 1] = s
    return cov


def apply_mirror(cov):
    """Partial mirror reflection ``eta cov eta^T`` (partial transpose of mode 2)."""
    cov = np.asarray(cov, dtype=float)
    return ETA @ cov @ ETA.T


def wigner_density(cov, point):
    """Gaussian Wigner function with zero mean and covariance ``cov``.

    Parameters
    ----------
    cov : (4, 4) array_like
        Strictly positive definite covariance.
    point : (4,) or (n, 4) array_like
        Phase-space point(s) in normalized coordinates.

    Returns
    -------
    float or ndarray
    """
    cov = np.asarray(cov, dtype=float)
    det = np.linalg.det(cov)
    if not det > 1e-300:
        raise SingularCovariance(f"covariance determinant {det:g} is not positive")
    x = np.asarray(point, dtype=float)
    quad = np.einsum("...i,...i->...", x, np.linalg.solve(cov, x.T).T)
    return np.exp(-0.5 * quad) / ((2 * np.pi) ** 2 * math.sqrt(det))
