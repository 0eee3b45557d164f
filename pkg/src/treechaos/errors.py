"""Exception hierarchy.

ValidationError subclasses signal bad input (CLI exit code 2),
ConvergenceError subclasses signal numeric non-convergence (exit code 3).
"""


class TreeChaosError(Exception):
    pass


class ValidationError(TreeChaosError):
    pass


class ConvergenceError(TreeChaosError):
    pass


class SymbolOutOfRange(ValidationError):
    """A vertex word symbol falls outside its allowed range."""


class ConeTooShallow(ValidationError):
    """The boundary cone is not deep enough to determine a horocycle height."""


class PoleAtHalfPeriod(ValidationError):
    """The c-function was evaluated too close to a half-period pole."""


class ExponentOutOfRange(ValidationError):
    """The Lebesgue exponent p lies outside the range required by the operation."""


class RadiusExhausted(ValidationError):
    """The validity ball of a truncated tree function became empty."""


class KernelTooShort(ValidationError):
    """A radial kernel does not cover the distances required by a convolution."""


class ZeroCoefficient(ValidationError):
    """The leading coefficient of an affine generator is zero."""


class ConstantComposition(ValidationError):
    """The composed symbol of the generator is numerically constant on the strip."""


class NoConvergence(ConvergenceError):
    """A power-series tail bound could not be pushed below tolerance."""


class QuadratureNotConverged(ConvergenceError):
    """Successive quadrature refinements failed to agree within tolerance."""


class NoRootFound(ConvergenceError):
    """No admissible root of the real part of the composed symbol was found."""
