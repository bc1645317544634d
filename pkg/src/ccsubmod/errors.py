"""Exception types shared across the package."""


class CcsubmodError(Exception):
    """Base class for all package errors."""


class ParameterError(CcsubmodError, ValueError):
    """A parameter is outside its mathematical or contractual domain."""


class InputError(CcsubmodError, ValueError):
    """A referenced id (element, node) does not exist."""


class GuardError(CcsubmodError, ValueError):
    """A size guard refused an exhaustive computation."""


class ParseError(CcsubmodError, ValueError):
    """Malformed input file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
