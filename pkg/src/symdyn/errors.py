"""Exception types shared across the package."""


class SymdynError(Exception):
    """Base class for all package errors."""


class ValidationError(SymdynError, ValueError):
    """Malformed input: bad matrices, tables, cocycles, configs."""


class ResourceLimitError(SymdynError, RuntimeError):
    """A configured enumeration / memory budget was exceeded.

    Carries enough context (what overflowed, at which size) for the caller
    to retry with a smaller request or a larger budget.
    """

    def __init__(self, message, *, requested=None, limit=None):
        super().__init__(message)
        self.requested = requested
        self.limit = limit


class ConvergenceError(SymdynError, RuntimeError):
    """An iterative solver failed to reach its tolerance."""

    def __init__(self, message, *, residual=None):
        super().__init__(message)
        self.residual = residual
