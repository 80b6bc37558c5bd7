"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnsupportedSeriesError(ValueError):
    """The operation is not defined for the requested series."""


class CrossCheckError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class NotConvergedError(RuntimeError):
    """An iterative procedure failed to reach its target accuracy."""
