"""Exception types shared across the package."""


class RingMetricsError(ValueError):
    """Base class for all precondition and geometry errors."""


class DegenerateCrossRatio(RingMetricsError):
    """Cross-ratio requested for a division-by-zero configuration (a=b or c=d)."""


class ZeroNormal(RingMetricsError):
    """Reflection line given with a zero normal vector."""


class OriginArgument(RingMetricsError):
    """Angle at the origin requested for the origin itself."""


class OutsideDomain(RingMetricsError):
    """A point argument does not lie in the (open) domain."""


class CoincidentPoints(RingMetricsError):
    """Two distinct points were required."""


class NoAdmissibleRoot(RingMetricsError):
    """The reflection-point solver found no usable root; geometric precondition violated."""


class NotCollinear(RingMetricsError):
    """Points are not collinear with the origin to within tolerance."""


class ParameterOutOfRange(RingMetricsError):
    """A scalar parameter violates its documented range."""


class BallNotContained(RingMetricsError):
    """The closed ball is not contained in the domain."""


class RootOutOfRange(RingMetricsError):
    """The arcsin argument left [0,1] by more than rounding noise."""


class DegenerateCoefficients(RingMetricsError):
    """Leading coefficient vanished where it should be positive."""


class EmrPointOutsideDomain(RingMetricsError):
    """A midpoint-rotated point left the domain, so the bound is undefined."""


class SetsNotDisjoint(RingMetricsError):
    """Boundary sets must have disjoint closures."""


class EmptySet(RingMetricsError):
    """A boundary set with no samples was given."""
