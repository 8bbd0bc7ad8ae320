"""Exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


class DLError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DLError, ValueError):
    """An object violates a structural invariant (bad grammar position, out-of-domain element, ...)."""


class BudgetExceeded(DLError):
    """A search or enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"span start {self.start} after end {self.end}")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(DLError):
    """Malformed input text. Always carries the offending span."""

    def __init__(self, message: str, span: SourceSpan, expected: str | None = None):
        if not message:
            raise ValueError("ParseError needs a message")
        self.message = message
        self.span = span
        self.expected = expected
        text = f"{span}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)
