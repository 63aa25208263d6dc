# tmkit/events/dependencies.py
"""Inter-event dependencies derived from the static model."""
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from ..core.diagnostics import Severity, has_errors
from ..core.exceptions import InvalidEventError
from ..core.types import DependencyGraph, Event, StaticModel
from .validation import validate_event


def derive_dependencies(model: StaticModel, events: Sequence[Event]) -> DependencyGraph:
    """Edge (Ei, Ej) whenever a flow or trigger leaves Ei and lands on an action of Ej outside Ei.

    Raises:
        InvalidEventError: if any event has ERROR diagnostics.
    """
    problems = [d for e in events for d in validate_event(model, e)]
    if has_errors(problems):
        raise InvalidEventError([d for d in problems if d.severity is Severity.ERROR])

    members: Dict[str, List[str]] = {}
    for event in events:
        for action_id in event.action_ids:
            members.setdefault(action_id, []).append(event.id)

    found: Dict[Tuple[str, str], None] = {}
    for edge in (*model.flows, *model.triggers):
        for source in events:
            if edge.src not in source.action_ids or edge.dst in source.action_ids:
                continue
            for target in members.get(edge.dst, ()):
                if target != source.id:
                    found.setdefault((source.id, target), None)

    nodes = tuple(e.id for e in events)
    order = {eid: i for i, eid in enumerate(nodes)}
    edges = tuple(sorted(found, key=lambda p: (order[p[0]], order[p[1]])))

    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(edges)
    return DependencyGraph(nodes, edges, not nx.is_directed_acyclic_graph(graph))
