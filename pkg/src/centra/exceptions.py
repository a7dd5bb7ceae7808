"""Exception hierarchy shared by every module."""


class CentraError(Exception):
    """Base class for all errors raised by centra."""


class GraphError(CentraError, ValueError):
    pass


class SelfLoopError(GraphError):
    pass


class NonPositiveWeightError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class NodeOutOfRangeError(GraphError, IndexError):
    pass


class TopologyMismatchError(GraphError):
    pass


class WeightOutOfRangeError(GraphError):
    pass


class WrongWeightKindError(GraphError):
    pass


class NotSymmetricError(GraphError):
    pass


class NotConnectedError(GraphError):
    pass


class NoConvergenceError(CentraError, RuntimeError):
    pass


class NegativeDifferenceError(CentraError, ArithmeticError):
    pass


class CountOverflowError(CentraError, OverflowError):
    pass


class SizeTooSmallError(CentraError, ValueError):
    pass


class UniverseMismatchError(CentraError, ValueError):
    pass


class ZeroDistanceError(CentraError, ZeroDivisionError):
    pass


class ParseError(CentraError, ValueError):
    """Malformed input file; ``line`` is 1-based, or None when not line-specific."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
