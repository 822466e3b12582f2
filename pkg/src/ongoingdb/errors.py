"""Exception hierarchy."""
from __future__ import annotations

from dataclasses import dataclass


class OngoingError(Exception):
    """Base class for all engine errors."""


class SchemaError(OngoingError):
    pass


class TypeMismatch(OngoingError):
    pass


class DataError(OngoingError):
    """Malformed relation file or value literal."""


@dataclass(frozen=True)
class Diagnostic:
    message: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class QueryError(OngoingError):
    """Syntax or plan-time error in a query; carries positioned diagnostics."""

    def __init__(self, message: str, line: int = 0, column: int = 0,
                 diagnostics: list[Diagnostic] | None = None):
        self.diagnostics = diagnostics or [Diagnostic(message, line, column)]
        super().__init__("; ".join(str(d) for d in self.diagnostics))

    @property
    def line(self) -> int:
        return self.diagnostics[0].line

    @property
    def column(self) -> int:
        return self.diagnostics[0].column
