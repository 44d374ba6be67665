"""Exception types raised by the curvature-gauge toolkit."""


class CurvatureGaugeError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(CurvatureGaugeError):
    """Operands have incompatible or unsupported dimensions."""


class NormalizationError(CurvatureGaugeError):
    """A direction vector that must be unit length is not."""


class HypothesisViolation(CurvatureGaugeError):
    """Input does not satisfy the algebraic hypothesis of a decomposition."""


class KSignError(CurvatureGaugeError):
    """A spherical-multiple decomposition was requested with k <= 0."""


class ResolutionError(CurvatureGaugeError):
    """A quadrature rule was requested below the minimum resolution."""


class CodimensionError(CurvatureGaugeError):
    """The codimension window [p, n-p] is empty or p is out of range."""


class DegenerateRegion(CurvatureGaugeError):
    """The fiber integral over the admissible region vanishes."""


class ConstraintError(CurvatureGaugeError):
    """A form violates the scalar-curvature pinching constraint."""


class EmptyDomain(CurvatureGaugeError):
    """No admissible start could be found within the sampling budget."""


class ConditionError(CurvatureGaugeError):
    """The validity condition of a closed-form bound is violated."""


class PatternError(CurvatureGaugeError):
    """A degenerating-sequence pattern violates its construction constraints."""


class SignError(CurvatureGaugeError):
    """Sign condition k * sc(gamma) > 0 fails for a rescaled sequence."""


class GenericityError(CurvatureGaugeError):
    """A height-function direction is non-generic for the immersion."""


class DegeneratePoint(CurvatureGaugeError):
    """Pointwise quantity undefined at a totally geodesic point."""
