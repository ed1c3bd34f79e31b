"""Exception types shared across the package."""


class RamseyLabError(Exception):
    """Base class for all errors raised by ramseylab."""


class ParameterError(RamseyLabError, ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(RamseyLabError, RuntimeError):
    """A configured exhaustive-search cap would be exceeded."""


class ParseError(RamseyLabError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
