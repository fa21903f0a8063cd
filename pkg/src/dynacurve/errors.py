"""Exception types shared across the package."""


class DynacurveError(Exception):
    """Base class for all package-specific failures."""


class RingTagMismatch(DynacurveError):
    """Two operands live over cyclotomic rings with different d."""


class NonZeroRemainder(DynacurveError):
    """An exact polynomial division left a nonzero remainder."""


class ResourceCapExceeded(DynacurveError):
    """A requested construction exceeds the configured degree cap."""


class NonConvergence(DynacurveError):
    """An iterative numerical routine failed to converge."""


class UnclassifiableRoot(DynacurveError):
    """A fiber root matched none of the orbit classification cases."""


class PreconditionViolated(DynacurveError):
    """Input data does not satisfy a documented precondition."""


class TrackingCollision(DynacurveError):
    """Two tracked roots came closer than the matching radius."""


class CapExceeded(DynacurveError):
    """Group closure exceeded the configured element cap."""


class DecompositionFailure(DynacurveError):
    """A permutation did not respect the column structure of the fiber."""


class RayTraceUnresolved(DynacurveError):
    """External-ray machinery could not resolve a sector membership."""
