"""Exception types shared across the package."""


class FreesplitError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(FreesplitError, ValueError):
    """Input violates a documented precondition (bad letter, empty family, ...)."""


class ParseError(InvalidInputError):
    """Text input could not be parsed; carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceCapError(FreesplitError):
    """A computation was refused because it would exceed the vertex budget."""

    def __init__(self, message, predicted=None, cap=None):
        super().__init__(message)
        self.predicted = predicted
        self.cap = cap


class InternalConsistencyError(FreesplitError):
    """A mathematical invariant failed; indicates a bug, not bad input."""


class UnsupportedExportError(FreesplitError, ValueError):
    """The requested export is not defined for this object."""
