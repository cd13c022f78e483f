"""Exception types shared across the package."""

from __future__ import annotations


class BribegamesError(Exception):
    """Base class for all package-specific errors."""


class FormulaSyntaxError(BribegamesError):
    """Raised by the formula parser; carries the 1-based source position."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class EvaluationError(BribegamesError):
    """Raised when a formula cannot be evaluated under a given assignment."""


class CaptureError(BribegamesError):
    """Raised when a substitution would capture a bound variable."""


class ResourceExhausted(BribegamesError):
    """Raised when a configured node/size budget is exceeded.

    The guarded routines never return a wrong answer; they raise this
    instead once the budget runs out.
    """


class InvalidMove(BribegamesError):
    """Raised when a move is not applicable to a society."""


class SpecError(BribegamesError):
    """Raised for malformed or inconsistent game descriptions."""
