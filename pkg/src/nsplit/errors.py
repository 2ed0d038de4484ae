class NSplitError(Exception):
    """Base class for all errors raised by the package."""


class ResourceError(NSplitError):
    """A configured size cap (elements, subgroups, recognition) was exceeded."""


class ValidationError(NSplitError):
    """Invalid construction parameters or inconsistent input data."""


class ParseError(NSplitError):
    """Malformed group or decomposition file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(NSplitError):
    """An operation was called outside its documented domain."""


class NotPromotableError(PreconditionError):
    pass


class InfeasibleError(NSplitError):
    """No decomposition of the requested kind exists."""


class BudgetExceeded(NSplitError):
    """Search node budget exhausted before the search finished."""
