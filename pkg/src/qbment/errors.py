"""Exception types raised by the simulator."""


class QBMError(Exception):
    """Base class for all simulator errors."""


class ParameterError(QBMError, ValueError):
    """Physical parameters outside the supported regime.

    ``name`` is the offending field, when a single one is to blame.
    """

    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name


class SingularCovariance(QBMError, ValueError):
    """Covariance matrix is (numerically) singular."""


class AsymmetricBlocks(QBMError, ValueError):
    """Diagonal 2x2 blocks of a covariance matrix differ."""


class NegativeDiscriminant(QBMError, ArithmeticError):
    """Symplectic-invariant discriminant is negative: the matrix is unphysical."""


class QuadratureNotConverged(QBMError, ArithmeticError):
    """Adaptive quadrature ran out of its evaluation budget.

    ``t`` carries the time at which the failure happened, when known.
    """

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t

    def __str__(self):
        msg = super().__str__()
        if self.t is not None:
            msg = f"{msg} (t = {self.t!r} ns)"
        return msg


class ConfigError(QBMError, ValueError):
    """Malformed or inconsistent sweep configuration."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
