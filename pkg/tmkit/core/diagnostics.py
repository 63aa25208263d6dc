# tmkit/core/diagnostics.py
"""Diagnostic values shared by the parser, the checkers and the CLI."""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple


class Severity(str, Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"

    @property
    def rank(self) -> int:
        return 0 if self is Severity.ERROR else 1


class Code(str, Enum):
    """Closed enumeration of checker, event and chronology diagnostics."""

    ILLEGAL_INTRA_FLOW = "ILLEGAL_INTRA_FLOW"
    ILLEGAL_INTER_FLOW = "ILLEGAL_INTER_FLOW"
    SAME_MACHINE_TRIGGER = "SAME_MACHINE_TRIGGER"
    BOUNDARY_BYPASS = "BOUNDARY_BYPASS"
    UNKNOWN_ACTION = "UNKNOWN_ACTION"
    EMPTY_EVENT = "EMPTY_EVENT"
    DISCONNECTED_EVENT = "DISCONNECTED_EVENT"
    DEP_VIOLATION = "DEP_VIOLATION"
    CYCLIC_BEHAVIOR = "CYCLIC_BEHAVIOR"
    CYCLIC_EVENT = "CYCLIC_EVENT"
    STARVED_FLOW = "STARVED_FLOW"


class StructureCode(str, Enum):
    DUPLICATE_ID = "DUPLICATE_ID"
    DUPLICATE_NAME = "DUPLICATE_NAME"
    DUPLICATE_EDGE = "DUPLICATE_EDGE"
    DANGLING_REFERENCE = "DANGLING_REFERENCE"
    SELF_FLOW = "SELF_FLOW"
    CONTAINMENT_CYCLE = "CONTAINMENT_CYCLE"
    MULTIPLE_COMPOSITE_WHOLES = "MULTIPLE_COMPOSITE_WHOLES"
    PART_CYCLE = "PART_CYCLE"


class ParseCode(str, Enum):
    """Every code a :class:`ParseError` may carry.

    Structure codes are members too, since the parser re-surfaces them with
    the span of the declaration at fault.
    """

    LEX_ERROR = "LEX_ERROR"
    SYNTAX_ERROR = "SYNTAX_ERROR"
    NESTING_TOO_DEEP = "NESTING_TOO_DEEP"
    UNKNOWN_ACTION = "UNKNOWN_ACTION"
    AMBIGUOUS_REFERENCE = "AMBIGUOUS_REFERENCE"
    UNKNOWN_EVENT = "UNKNOWN_EVENT"
    DUPLICATE_DECLARATION = "DUPLICATE_DECLARATION"
    DUPLICATE_ID = "DUPLICATE_ID"
    DUPLICATE_NAME = "DUPLICATE_NAME"
    DUPLICATE_EDGE = "DUPLICATE_EDGE"
    DANGLING_REFERENCE = "DANGLING_REFERENCE"
    SELF_FLOW = "SELF_FLOW"
    CONTAINMENT_CYCLE = "CONTAINMENT_CYCLE"
    MULTIPLE_COMPOSITE_WHOLES = "MULTIPLE_COMPOSITE_WHOLES"
    PART_CYCLE = "PART_CYCLE"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: Code
    subject: str
    message: str

    def sort_key(self) -> Tuple[int, str, str, str]:
        return (self.severity.rank, self.subject, self.code.value, self.message)

    def downgraded(self) -> "Diagnostic":
        return Diagnostic(Severity.WARNING, self.code, self.subject, self.message)

    def format(self) -> str:
        return f"{self.severity.value} {self.code.value} {self.subject}: {self.message}"


@dataclass(frozen=True)
class StructureError:
    code: StructureCode
    kind: str
    subject: str
    message: str
    members: Tuple[str, ...] = ()


@dataclass(frozen=True)
class SourceSpan:
    line: int = 1
    column: int = 1
    length: int = 0

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 0:
            raise ValueError(f"Invalid span {self.line}:{self.column}+{self.length}")


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    code: ParseCode
    message: str

    def format(self) -> str:
        return f"ERROR {self.code.value} {self.span.line}:{self.span.column}: {self.message}"


def sort_diagnostics(diagnostics: Iterable[Diagnostic]) -> List[Diagnostic]:
    """Order diagnostics by (severity, subject, code) for stable output."""
    return sorted(diagnostics, key=Diagnostic.sort_key)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def error(code: Code, subject: str, message: str, severity: Optional[Severity] = None) -> Diagnostic:
    return Diagnostic(severity or Severity.ERROR, code, subject, message)


def warning(code: Code, subject: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, subject, message)
