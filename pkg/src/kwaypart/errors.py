"""Exception types shared across the package."""


class KwaypartError(Exception):
    """Base class for all package errors."""


class StructuralError(KwaypartError):
    """The CSR arrays violate a graph invariant (self-loop, asymmetry, ...)."""


class InvalidClustering(KwaypartError):
    """Cluster ids are not a contiguous range 0..n'-1."""


class ParseError(KwaypartError):
    """Malformed token or line in an input file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RangeError(KwaypartError):
    """A value in a partition file lies outside [0, k-1]."""


class LengthError(KwaypartError):
    """A partition file does not contain exactly n lines."""


class InfeasibleInstance(KwaypartError):
    """No feasible partition exists (e.g. a single node heavier than l_max)."""


class EmptyBoundary(KwaypartError):
    """A block pair shares no cut edge, so no flow corridor exists."""


class WeightedGraphUnsupported(KwaypartError):
    """Balance enforcement requires uniform node weights."""


class UnsupportedFeature(KwaypartError):
    """A parsed flag names functionality that is intentionally not provided."""
