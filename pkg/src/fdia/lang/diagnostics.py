"""Positioned diagnostics for scenario source text."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from fdia.errors import FdiaError


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 0

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 0:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    message: str
    span: SourceSpan

    def render(self, filename: str = "<scenario>") -> str:
        return (
            f"{filename}:{self.span.line}:{self.span.column}: "
            f"{self.severity.value}: {self.message}"
        )


def error(message: str, span: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.ERROR, message, span)


def warning(message: str, span: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.WARNING, message, span)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


class ScenarioSyntaxError(FdiaError):
    """Raised when scenario text cannot be tokenized or parsed."""

    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(first.render() if first else "syntax error")
