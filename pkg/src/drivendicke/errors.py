"""Exception taxonomy shared across the package.

Every failure mode that a caller may want to catch programmatically gets its
own class.  Anything raised from this module is a subclass of
:class:`DickeError`, so ``except DickeError`` at a driver boundary is always
safe.
"""

from __future__ import annotations


class DickeError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(DickeError):
    """Run configuration is malformed (unknown key, bad type, bad range)."""


class NonConvergence(DickeError):
    """An iterative routine failed its own convergence or sanity check."""


class DomainError(DickeError):
    """Arguments lie outside the physical domain of the quantity."""


class EmptyCurve(DickeError):
    """A requested analytic curve has no points in the physical domain."""


class NoTongue(DickeError):
    """A 1-D instability scan found no unstable interval in the bracket."""


class MultipleTongues(DickeError):
    """A 1-D instability scan found more than one unstable interval."""


class UnsupportedVariant(DickeError):
    """A resonance order / variant combination that is not implemented."""


class EigensolverFailure(DickeError):
    """The dense or sparse eigensolver did not converge."""


class SeedGridTooCoarse(DickeError):
    """Doubling the seed density changed the minima count."""


class NoBracket(DickeError):
    """Bisection endpoints do not straddle the feature being located."""


class UnitarityLoss(DickeError):
    """A propagator drifted away from unitarity beyond tolerance."""


class QuadratureNonConvergence(DickeError):
    """Doubling the quadrature resolution still changes the result."""
