from __future__ import annotations


class DirqaError(Exception):
    """Base class for all library errors."""


class ParseError(DirqaError, ValueError):
    """Malformed input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(DirqaError, ValueError):
    """A precondition on the mathematical input does not hold."""


class NumericError(DirqaError, ArithmeticError):
    """A numerical routine failed to reach its accuracy target."""
