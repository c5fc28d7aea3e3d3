"""Exception hierarchy shared by the library and the CLI."""


class BikeiError(Exception):
    """Base class for all library errors."""


class DomainError(BikeiError, ValueError):
    """A well-formed input that violates a mathematical precondition."""


class ParseError(BikeiError, ValueError):
    """Malformed text input. ``line`` is 1-based when known."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class GuardExceeded(BikeiError, RuntimeError):
    """A configurable resource guard (size, degree, node count) was hit."""
