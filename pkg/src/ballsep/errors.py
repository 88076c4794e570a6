"""Exception types shared across the package."""


class BallsepError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(BallsepError):
    """Operands live in Euclidean spaces of different dimensions."""


class DimensionTooSmall(BallsepError):
    """Ambient dimension below 2 is not supported."""


class BallsOverlapOrTouch(BallsepError):
    """The two balls intersect or are tangent; no positive gap exists."""


class KInsufficient(BallsepError):
    """The bias half range is smaller than max(|c|, |x|)."""


class NonPositiveArgument(BallsepError):
    """A gamma/beta argument that must be positive is not."""


class ArgumentOutOfRange(BallsepError):
    """An argument lies outside its documented domain."""


class NoConvergence(BallsepError):
    """An iterative evaluation hit its iteration cap before converging."""


class EmptyInstanceList(BallsepError):
    """An operation over ball pairs received no pairs."""


class InternalConsistencyError(BallsepError):
    """A computed quantity violated an internal invariant; indicates a bug."""
