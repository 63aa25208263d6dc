# tmkit/export/dot.py
"""Graphviz DOT text for the static and behavioral views."""
from dataclasses import dataclass
from typing import List, Tuple

from ..core.types import BehavioralModel, LinkKind, StaticModel

INDENT = "  "


@dataclass(frozen=True)
class DotDocument:
    text: str

    def __str__(self) -> str:
        return self.text


def _quote(value: str) -> str:
    return '"{}"'.format(value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n"))


def anchor_id(thimac_id: str) -> str:
    """Invisible node standing in for a thimac's cluster."""
    return f"anchor:{thimac_id}"


def to_dot_static(model: StaticModel) -> DotDocument:
    """Nested clusters per thimac, solid flows, dashed triggers, bold shared links."""
    lines = ["digraph tm {", f"{INDENT}compound=true;"]

    children = {tid: sorted(c.id for c in kids) for tid, kids in model.children.items()}
    stack: List[Tuple[str, int, bool]] = [(t.id, 1, False) for t in sorted(model.roots, key=lambda t: t.id, reverse=True)]
    while stack:
        tid, depth, closing = stack.pop()
        pad = INDENT * depth
        if closing:
            lines.append(f"{pad}}}")
            continue
        thimac = model.thimac_index[tid]
        lines.append(f"{pad}subgraph {_quote('cluster_' + tid)} {{")
        lines.append(f"{pad}{INDENT}label={_quote(thimac.name)};")
        if thimac.declared_oo:
            lines.append(f"{pad}{INDENT}style=bold;")
        lines.append(f"{pad}{INDENT}{_quote(anchor_id(tid))} [shape=point, style=invis];")
        for action in sorted(model.actions_by_owner.get(tid, ()), key=lambda a: a.id):
            lines.append(f"{pad}{INDENT}{_quote(action.id)} [label={_quote(action.display)}];")
        stack.append((tid, depth, True))
        stack.extend((c, depth + 1, False) for c in reversed(children.get(tid, [])))

    for flow in sorted(model.flows, key=lambda f: (f.src, f.dst)):
        lines.append(f"{INDENT}{_quote(flow.src)} -> {_quote(flow.dst)};")
    for trig in sorted(model.triggers, key=lambda t: (t.src, t.dst)):
        lines.append(f"{INDENT}{_quote(trig.src)} -> {_quote(trig.dst)} [style=dashed];")
    shared = sorted((l.whole, l.part) for l in model.part_links if l.kind is LinkKind.SHARED)
    for whole, part in shared:
        lines.append(f"{INDENT}{_quote(anchor_id(whole))} -> {_quote(anchor_id(part))} [style=bold, dir=none];")
    lines.append("}")
    return DotDocument("\n".join(lines) + "\n")


def to_dot_behavior(behavior: BehavioralModel) -> DotDocument:
    """One node per event and one edge per chronology step, in declared order."""
    lines = [f"digraph {_quote(behavior.id)} {{", f"{INDENT}rankdir=LR;"]
    lines.extend(f"{INDENT}{_quote(e)};" for e in behavior.event_ids)
    lines.extend(f"{INDENT}{_quote(a)} -> {_quote(b)};" for a, b in behavior.edges)
    lines.append("}")
    return DotDocument("\n".join(lines) + "\n")
