"""Exception types shared across the package."""


class AtriqError(Exception):
    """Base class for every error this package raises deliberately."""


class InvalidInputError(AtriqError, ValueError):
    """Input violates a structural precondition (shape, range, finiteness)."""


class DegenerateInputError(AtriqError, ValueError):
    """Input is structurally valid but statistically degenerate (e.g. constant)."""


class InsufficientDataError(AtriqError, ValueError):
    """Too few usable data points for the requested operation."""


class DomainError(AtriqError, ValueError):
    """Scalar argument lies outside the mathematical domain of the operation."""


class InputFileError(AtriqError, OSError):
    """A file is missing, unreadable, or malformed."""
