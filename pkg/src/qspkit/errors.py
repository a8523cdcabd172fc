"""Exception hierarchy.

Validation errors (bad input) map to CLI exit code 2, numerical failures to 3.
"""


class QspkitError(Exception):
    """Base class for all qspkit errors."""


class ValidationError(QspkitError, ValueError):
    """Input violates a documented precondition."""


class NumericalError(QspkitError, ArithmeticError):
    """A computation failed or lost accuracy."""


class SupNormTooLarge(ValidationError):
    """Target polynomial is too close to modulus one on the unit circle."""


class NotCanonical(ValidationError):
    """Phase factors do not satisfy ``lambda + sum(theta) == 0``."""


class NonConvergent(NumericalError):
    """Completion residual did not reach tolerance on the largest grid."""


class SingularSystem(NumericalError):
    """A Riemann-Hilbert slice system is numerically singular."""


class NonPositivePivot(NumericalError):
    """The structured LDL recursion produced a non-positive pivot."""


class Degenerate(NumericalError):
    """Layer stripping lost normalization."""


class NonRealTangent(NumericalError):
    """The tangent of a phase factor came out with a non-negligible imaginary part."""
