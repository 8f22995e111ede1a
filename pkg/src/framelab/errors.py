"""Exception hierarchy shared by all framelab modules."""


class FrameError(ValueError):
    """Base class for domain errors (bad frames, bad parameters)."""


class FrameFormatError(FrameError):
    """A frame document could not be parsed."""


class DimensionMismatchError(FrameError):
    """Vectors or coefficient sequences have inconsistent lengths."""


class NotSpanningError(FrameError):
    """An operation that needs a frame (positive lower bound) got a non-spanning family."""


class ZeroFrameError(FrameError):
    """Every vector of the family is (numerically) zero."""


class ConvergenceError(FrameError, RuntimeError):
    """The Jacobi eigensolver did not converge within its sweep budget."""
