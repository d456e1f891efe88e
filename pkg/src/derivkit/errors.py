"""Exception hierarchy shared by the library and the command line."""


class DerivkitError(Exception):
    """Base class for every error raised by derivkit."""


class ParseError(DerivkitError, ValueError):
    """Malformed input text or JSON.  ``location`` names where it went wrong."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class PreconditionError(DerivkitError, ValueError):
    """Input parsed fine but violates an operation's precondition."""


class DimensionMismatch(PreconditionError):
    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message)


class InternalError(DerivkitError, RuntimeError):
    """A mathematical guarantee failed to hold; always a bug."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
