# tmkit/core/exceptions.py
"""Exception hierarchy for tmkit."""
from typing import Iterable, List, Optional

from .diagnostics import Diagnostic, ParseError, StructureError


class TmkitError(Exception):
    """Base class for every error raised by tmkit."""

    code = "TMKIT_ERROR"

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class StructureErrors(TmkitError):
    """``build_model`` found invariant violations; all of them are listed."""

    code = "STRUCTURE_ERROR"

    def __init__(self, errors: Iterable[StructureError]):
        self.errors: List[StructureError] = list(errors)
        summary = "; ".join(f"{e.code.value} {e.subject}" for e in self.errors[:5])
        more = f" (+{len(self.errors) - 5} more)" if len(self.errors) > 5 else ""
        super().__init__(f"Invalid static model: {summary}{more}")


class ParseFailure(TmkitError):
    code = "PARSE_ERROR"

    def __init__(self, errors: Iterable[ParseError]):
        self.errors: List[ParseError] = sorted(
            errors, key=lambda e: (e.span.line, e.span.column, e.code.value, e.message)
        )
        first = self.errors[0].format() if self.errors else "no errors"
        super().__init__(f"{len(self.errors)} parse error(s), first: {first}")


class UnknownThimacError(TmkitError, LookupError):
    code = "UNKNOWN_THIMAC"

    def __init__(self, thimac_id: str):
        self.thimac_id = thimac_id
        super().__init__(f"Unknown thimac '{thimac_id}'")


class UnknownActionError(TmkitError, LookupError):
    code = "UNKNOWN_ACTION"

    def __init__(self, action_ids: Iterable[str]):
        self.action_ids = sorted(action_ids)
        super().__init__(f"Unknown action(s): {', '.join(self.action_ids)}")


class UnknownEventError(TmkitError, LookupError):
    code = "UNKNOWN_EVENT"

    def __init__(self, event_ids: Iterable[str]):
        self.event_ids = sorted(event_ids)
        super().__init__(f"Unknown event(s): {', '.join(self.event_ids)}")


class EmptyKindsError(TmkitError, ValueError):
    code = "EMPTY_KINDS"

    def __init__(self):
        super().__init__("At least one action kind is required")


class InvalidEventError(TmkitError):
    code = "INVALID_EVENT"

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics = list(diagnostics)
        subjects = sorted({d.subject for d in self.diagnostics})
        super().__init__(f"Invalid event(s): {', '.join(subjects)}")


class CyclicBehaviorError(TmkitError):
    code = "CYCLIC_BEHAVIOR"

    def __init__(self, behavior_id: str):
        self.behavior_id = behavior_id
        super().__init__(f"Behavior '{behavior_id}' contains a cycle and cannot be linearized")


class SimulationError(TmkitError):
    code = "SIMULATION_ERROR"

    def __init__(self, message: str, subject: str, event_id: Optional[str] = None):
        self.subject = subject
        self.event_id = event_id
        super().__init__(message)


class CyclicEventError(SimulationError):
    code = "CYCLIC_EVENT"

    def __init__(self, event_id: str):
        super().__init__(f"Event '{event_id}' has a cycle among its actions", event_id, event_id)


class StarvedFlowError(SimulationError):
    code = "STARVED_FLOW"

    def __init__(self, subject: str, event_id: str):
        super().__init__(f"No token available for '{subject}' in event '{event_id}'", subject, event_id)


class DeserializationError(TmkitError):
    """JSON input could not be turned back into a document or a trace."""

    def __init__(self, message: str, code: str = "MALFORMED_JSON", path: str = ""):
        self.path = path
        super().__init__(f"{message} (at '{path or '/'}')", code)
