"""Exception types shared across the package.

The CLI maps these onto exit codes: usage problems exit with 2,
numerical/hypothesis failures with 3.
"""


class HardylabError(Exception):
    """Base class for all package-specific errors."""


class DomainSpecError(HardylabError, ValueError):
    """Invalid domain specification (dimension, lengths, ordering)."""


class RidgeError(HardylabError):
    """A pointwise quantity was requested on or too close to the ridge set."""


class SingularityError(HardylabError):
    """A pointwise quantity was requested at a geometric singularity."""


class ProfileSupportError(HardylabError, ValueError):
    """Test-profile support violates the constructor's requirements."""


class NonconvergenceError(HardylabError):
    """Adaptive quadrature exhausted its subdivision budget."""


class DivergentIntegralError(HardylabError):
    """The requested integral diverges (detected from the exponents)."""


class ZeroDenominatorError(HardylabError):
    """A quotient was requested with a vanishing denominator."""


class HypothesisViolationError(HardylabError):
    """The domain/parameters violate the hypotheses of the requested result."""
