"""Exception and warning types shared across the package."""


class StokesGreenError(Exception):
    """Base class for all errors raised by this package."""


class BranchCutViolation(StokesGreenError):
    """lambda + nu*|xi|^2 landed on the branch cut (-inf, 0] of the square root."""


class ZeroLambda(StokesGreenError):
    """Kernel formulas with a 1/lambda factor were evaluated at lambda = 0."""


class ZeroModeUnsupported(StokesGreenError):
    """The requested operation needs |xi| > 0."""


class SingularBoundaryMatrix(StokesGreenError):
    """The 2x2 boundary coupling matrix is (numerically) singular: mu*(mu-|xi|) ~ 0."""


class PoleOnContour(StokesGreenError):
    """A contour passes too close to a pole of the integrand."""


class PoleHit(StokesGreenError):
    """lambda coincides (within tolerance) with a pole of the resolvent."""


class QuadratureUnderresolved(StokesGreenError):
    """Doubling the quadrature order changed the result more than the tolerance."""


class GridTooSmall(StokesGreenError):
    """The grid has too few nodes for the requested stencil or quadrature."""


class HypothesisViolated(StokesGreenError):
    """A boundary operator failed the admissibility conditions."""


class IncompatibleData(StokesGreenError):
    """Input data is inconsistent (shapes, compatibility conditions, mode sets)."""


class AsymmetricModeSet(IncompatibleData):
    """A physical-space assembly was requested from a non-conjugate-symmetric mode set."""


class StabilityWarning(UserWarning):
    """Time step large relative to the diffusive scale; accuracy may degrade."""


class TruncationWarning(UserWarning):
    """Field has non-negligible mass near the domain truncation boundary."""
