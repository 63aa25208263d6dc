# tmkit/export/canonical.py
"""Canonical JSON for documents and traces.

Output is RFC 8785 canonical JSON: sorted keys, no insignificant
whitespace. Arrays of identified elements are sorted by id; firings keep
their chronological order.
"""
import logging
from typing import Any, Dict, List, Tuple, Union

import rfc8785
from pydantic import TypeAdapter, ValidationError

from ..core.diagnostics import StructureError
from ..core.exceptions import DeserializationError, StructureErrors
from ..core.model import ModelAssembler
from ..core.types import (
    Action,
    ActionKind,
    BehavioralModel,
    Event,
    Flow,
    LinkKind,
    ModelDocument,
    PartLink,
    Thimac,
    Trigger,
)
from ..simulation.trace import FiringCause, FiringRecord, Token, TokenOrigin, Trace
from ..utils.config import SCHEMA_VERSION, SCHEMA_VERSION_KEY
from .schema import DocumentRecord, TraceRecord, json_pointer

logger = logging.getLogger(__name__)
_JSON = TypeAdapter(Any)

_ARRAY_OF_KIND = {
    "thimac": "thimacs",
    "action": "actions",
    "flow": "flows",
    "trigger": "triggers",
    "part_link": "part_links",
}


def document_to_dict(doc: ModelDocument) -> Dict[str, Any]:
    m = doc.static
    return {
        SCHEMA_VERSION_KEY: SCHEMA_VERSION,
        "thimacs": [
            {"id": t.id, "name": t.name, "parent": t.parent, "declared_oo": t.declared_oo}
            for t in sorted(m.thimacs, key=lambda t: t.id)
        ],
        "part_links": [
            {"whole": l.whole, "part": l.part, "kind": l.kind.value}
            for l in sorted(m.part_links, key=lambda l: (l.whole, l.part))
        ],
        "actions": [
            {"id": a.id, "kind": a.kind.value, "owner": a.owner, "thing_label": a.thing_label}
            for a in sorted(m.actions, key=lambda a: a.id)
        ],
        "flows": [{"src": f.src, "dst": f.dst} for f in sorted(m.flows, key=lambda f: (f.src, f.dst))],
        "triggers": [{"src": t.src, "dst": t.dst} for t in sorted(m.triggers, key=lambda t: (t.src, t.dst))],
        "events": [
            {"id": e.id, "name": e.name, "action_ids": sorted(e.action_ids), "time_label": e.time_label}
            for e in sorted(doc.events, key=lambda e: e.id)
        ],
        "behaviors": [
            {"id": b.id, "event_ids": list(b.event_ids), "edges": [list(p) for p in b.edges]}
            for b in sorted(doc.behaviors, key=lambda b: b.id)
        ],
    }


def trace_to_dict(trace: Trace) -> Dict[str, Any]:
    return {
        SCHEMA_VERSION_KEY: SCHEMA_VERSION,
        "tokens": [
            {
                "id": t.id,
                "origin": t.origin.value,
                "birth_action": t.birth_action,
                "label": t.label,
                "history": list(t.history),
            }
            for t in sorted(trace.tokens, key=lambda t: t.id)
        ],
        "firings": [
            {
                "event": r.event,
                "action": r.action,
                "kind": r.kind.value,
                "cause": r.cause.value,
                "consumed": list(r.consumed),
                "emitted": list(r.emitted),
                "exited": list(r.exited),
            }
            for r in trace.firings
        ],
        "exits": sorted(trace.exits),
        "final_locations": [
            {"token": token, "action": action} for token, action in sorted(trace.final_locations.items())
        ],
    }


def to_json(value: Union[ModelDocument, Trace]) -> str:
    """Canonical JSON text of a document or a trace."""
    if isinstance(value, Trace):
        payload = trace_to_dict(value)
    elif isinstance(value, ModelDocument):
        payload = document_to_dict(value)
    else:
        raise TypeError(f"Cannot serialize {type(value).__name__}")
    return rfc8785.dumps(payload).decode("utf-8")


def _violation(message: str, path: str) -> DeserializationError:
    return DeserializationError(message, "SCHEMA_VIOLATION", path)


def _structure_path(err: StructureError, record: DocumentRecord) -> str:
    array = _ARRAY_OF_KIND.get(err.kind, "")
    items = getattr(record, array, [])
    for i, item in enumerate(items):
        key = getattr(item, "id", None)
        if key is None and hasattr(item, "src"):
            key = f"{item.src}{'~>' if err.kind == 'trigger' else '->'}{item.dst}"
        if key is None and hasattr(item, "whole"):
            key = f"{item.whole}=>{item.part}"
        if key == err.subject:
            return f"/{array}/{i}"
    return f"/{array}"


def _document_from_record(record: DocumentRecord) -> ModelDocument:
    assembler = ModelAssembler(
        thimacs=[Thimac(t.id, t.name, t.parent, t.declared_oo) for t in record.thimacs],
        part_links=[PartLink(l.whole, l.part, LinkKind(l.kind)) for l in record.part_links],
        actions=[Action(a.id, ActionKind(a.kind), a.owner, a.thing_label) for a in record.actions],
        flows=[Flow(f.src, f.dst) for f in record.flows],
        triggers=[Trigger(t.src, t.dst) for t in record.triggers],
        logger=logger,
    )
    try:
        static = assembler.assemble()
    except StructureErrors as e:
        first = e.errors[0]
        raise _violation(f"{first.code.value}: {first.message}", _structure_path(first, record)) from None

    events: List[Event] = []
    seen = set()
    for i, ev in enumerate(record.events):
        if ev.id in seen:
            raise _violation(f"Event '{ev.id}' appears twice", f"/events/{i}/id")
        seen.add(ev.id)
        for j, ref in enumerate(ev.action_ids):
            if ref not in static.action_index:
                raise _violation(f"Unknown action '{ref}'", f"/events/{i}/action_ids/{j}")
        events.append(Event(ev.id, frozenset(ev.action_ids), ev.name, ev.time_label))

    behaviors: List[BehavioralModel] = []
    names = set()
    for i, b in enumerate(record.behaviors):
        if b.id in names:
            raise _violation(f"Behavior '{b.id}' appears twice", f"/behaviors/{i}/id")
        names.add(b.id)
        if len(set(b.event_ids)) != len(b.event_ids):
            raise _violation(f"Behavior '{b.id}' lists an event twice", f"/behaviors/{i}/event_ids")
        for j, ref in enumerate(b.event_ids):
            if ref not in seen:
                raise _violation(f"Unknown event '{ref}'", f"/behaviors/{i}/event_ids/{j}")
        edges: List[Tuple[str, str]] = []
        for j, (a, c) in enumerate(b.edges):
            if a not in b.event_ids or c not in b.event_ids:
                raise _violation(f"Edge {a}->{c} leaves behavior '{b.id}'", f"/behaviors/{i}/edges/{j}")
            edges.append((a, c))
        behaviors.append(BehavioralModel(b.id, tuple(b.event_ids), tuple(edges)))

    return ModelDocument(static, tuple(events), tuple(behaviors))


def _trace_from_record(record: TraceRecord) -> Trace:
    return Trace(
        firings=tuple(
            FiringRecord(
                r.event,
                r.action,
                ActionKind(r.kind),
                FiringCause(r.cause),
                tuple(r.consumed),
                tuple(r.emitted),
                tuple(r.exited),
            )
            for r in record.firings
        ),
        tokens=tuple(
            Token(t.id, TokenOrigin(t.origin), t.birth_action, t.label, tuple(t.history))
            for t in record.tokens
        ),
        exits=tuple(record.exits),
        final_locations={loc.token: loc.action for loc in record.final_locations},
    )


def from_json(text: Union[str, bytes]) -> Union[ModelDocument, Trace]:
    """Rebuild a document or a trace; traces are recognized by their ``firings`` key.

    Raises:
        DeserializationError: ``MALFORMED_JSON`` for unreadable text,
            ``SCHEMA_VIOLATION`` with a JSON pointer for everything else.
    """
    try:
        payload = _JSON.validate_json(text)
    except ValidationError as e:
        raise DeserializationError(f"Malformed JSON: {e.errors()[0]['msg']}") from None

    if not isinstance(payload, dict):
        raise _violation("Top-level value must be an object", "")

    is_trace = "firings" in payload
    schema = TraceRecord if is_trace else DocumentRecord
    try:
        record = schema.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        raise _violation(first["msg"], json_pointer(first["loc"])) from None

    if is_trace:
        return _trace_from_record(record)
    return _document_from_record(record)
