"""Exception taxonomy for the cslbounds library.

Every error raised deliberately by this package derives from
:class:`CslBoundsError`, so callers can catch the whole family at once.
The CLI maps solver errors to exit code 2 and Monte-Carlo verification
failures to exit code 3.
"""

__all__ = [
    "CslBoundsError",
    "WhiteNotPointwise",
    "WhiteNotNormalizable",
    "WhiteNotSamplable",
    "QuadratureNonConvergence",
    "DisplacementTooLarge",
    "ResolutionTooCoarse",
    "SolverError",
    "NoRootInBudget",
    "AlreadyCollapsing",
    "NeverCollapsing",
    "MonotonicityViolation",
]


class CslBoundsError(Exception):
    """Base class for all library errors."""


class WhiteNotPointwise(CslBoundsError):
    """The white-noise time correlator is a Dirac delta; it has no pointwise value."""


class WhiteNotNormalizable(CslBoundsError):
    """Normalized fluctuation measures divide by the zero-lag correlator, which diverges for white noise."""


class WhiteNotSamplable(CslBoundsError):
    """White noise has unbounded spectral mass; no finite mode grid can cover 99.9% of it."""


class QuadratureNonConvergence(CslBoundsError):
    """Adaptive quadrature failed to reach the requested tolerance within its subdivision budget."""


class DisplacementTooLarge(CslBoundsError):
    """A species displacement is not small against the correlation length, so the
    small-displacement expansion of the decay exponent is invalid."""


class ResolutionTooCoarse(CslBoundsError):
    """The sampling step does not resolve the noise correlation time."""


class SolverError(CslBoundsError):
    """Base class for root-solver failures."""


class NoRootInBudget(SolverError):
    """The bracket expansion hit its ceiling without enclosing a root."""


class AlreadyCollapsing(SolverError):
    """The decay exponent already exceeds one at the measurement time even as the
    cutoff tends to zero; no finite lower bound exists."""


class NeverCollapsing(SolverError):
    """Even the white-noise (infinite-cutoff) limit does not reach collapse by the
    measurement time; no cutoff can."""


class MonotonicityViolation(SolverError):
    """A function the solver requires to be monotone was sampled out of order."""
