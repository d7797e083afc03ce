"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FuzzyRiskError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(FuzzyRiskError):
    """Invalid configuration: bad partitions, hierarchies, questionnaires.

    Carries the full list of findings so callers can report every violation
    at once instead of stopping at the first.
    """

    def __init__(self, message: str, diagnostics: list["Diagnostic"] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class RuleParseError(ConfigError):
    """Syntax or range error in the rule DSL, with source position."""

    def __init__(self, message: str, line: int, column: int, expected: str | None = None):
        loc = f"line {line}, column {column}: {message}"
        if expected:
            loc += f" (expected {expected})"
        super().__init__(loc)
        self.line = line
        self.column = column
        self.expected = expected


class DimensionError(FuzzyRiskError):
    """Pointwise operation over sets with mismatched universes."""


class InputError(FuzzyRiskError):
    """Bad crisp input, unknown term label, or missing input variable."""


class DegenerateSetError(FuzzyRiskError):
    """Aggregated fuzzy set is identically zero; no centroid exists."""


class AssessmentError(FuzzyRiskError):
    """Leaf groups left unscored, or answers that cannot be attributed."""


class Diagnostic:
    """A single validation finding. Severity is 'error' or 'warning'."""

    __slots__ = ("severity", "where", "message")

    def __init__(self, severity: str, where: str, message: str):
        self.severity = severity
        self.where = where
        self.message = message

    def __repr__(self) -> str:
        return f"Diagnostic({self.severity!r}, {self.where!r}, {self.message!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Diagnostic)
            and (self.severity, self.where, self.message)
            == (other.severity, other.where, other.message)
        )

    def as_dict(self) -> dict:
        return {"severity": self.severity, "where": self.where, "message": self.message}


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)
