# tmkit/parser/writer.py
"""Canonical ``.tm`` text for a document."""
from typing import Dict, List, Tuple

from ..core.types import BehavioralModel, Event, LinkKind, ModelDocument, StaticModel

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}
INDENT = "  "


def quote(value: str) -> str:
    return '"' + "".join(_ESCAPES.get(ch, ch) for ch in value) + '"'


def _thimac_lines(model: StaticModel) -> List[str]:
    shared: Dict[str, List[str]] = {}
    for link in model.part_links:
        if link.kind is LinkKind.SHARED:
            shared.setdefault(link.whole, []).append(link.part)

    lines: List[str] = []
    # (thimac id, depth, closing) entries; closing entries emit the brace
    stack: List[Tuple[str, int, bool]] = [(t.id, 0, False) for t in reversed(model.roots)]
    while stack:
        tid, depth, closing = stack.pop()
        pad = INDENT * depth
        if closing:
            lines.append(f"{pad}}}")
            continue
        thimac = model.thimac_index[tid]
        lines.append(f"{pad}thimac {thimac.name}{' oo' if thimac.declared_oo else ''} {{")
        actions = model.actions_by_owner.get(tid, ())
        if actions:
            lines.append(f"{pad}{INDENT}machine {{")
            lines.extend(f"{pad}{INDENT * 2}{a.display};" for a in actions)
            lines.append(f"{pad}{INDENT}}}")
        lines.extend(f"{pad}{INDENT}shared part {part};" for part in shared.get(tid, ()))
        stack.append((tid, depth, True))
        stack.extend((c.id, depth + 1, False) for c in reversed(model.children.get(tid, ())))
    return lines


def _event_line(event: Event) -> str:
    name = f" {quote(event.name)}" if event.name != event.id else ""
    at = f" at {quote(event.time_label)}" if event.time_label else ""
    return f"event {event.id}{name} over {{ {', '.join(sorted(event.action_ids))} }}{at};"


def _behavior_lines(behavior: BehavioralModel) -> List[str]:
    lines = [f"behavior {behavior.id} {{"]
    appearance: Dict[str, None] = {}
    for a, b in behavior.edges:
        appearance.setdefault(a, None)
        appearance.setdefault(b, None)
    if tuple(appearance) != tuple(behavior.event_ids):
        lines.extend(f"{INDENT}{e};" for e in behavior.event_ids)
    lines.extend(f"{INDENT}{a} -> {b};" for a, b in behavior.edges)
    lines.append("}")
    return lines


def round_trip(doc: ModelDocument) -> str:
    """Emit canonical text such that parsing it yields a document equal to ``doc``.

    Thimac blocks nest by containment with actions in declaration order; flows
    and triggers follow at top level, then events and behaviors.
    """
    model = doc.static
    lines = _thimac_lines(model)
    lines.extend(f"flow {f.src} -> {f.dst};" for f in model.flows)
    lines.extend(f"trigger {t.src} ~> {t.dst};" for t in model.triggers)
    lines.extend(_event_line(e) for e in doc.events)
    for behavior in doc.behaviors:
        lines.extend(_behavior_lines(behavior))
    return "\n".join(lines) + "\n" if lines else ""
