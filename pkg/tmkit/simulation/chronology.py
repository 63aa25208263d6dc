# tmkit/simulation/chronology.py
"""Checks a declared chronology against derived dependencies and orders it."""
from typing import List

import networkx as nx

from ..core.diagnostics import Code, Diagnostic, error, sort_diagnostics, warning
from ..core.exceptions import CyclicBehaviorError, UnknownEventError
from ..core.types import BehavioralModel, DependencyGraph


def validate_chronology(behavior: BehavioralModel, deps: DependencyGraph) -> List[Diagnostic]:
    """Report dependencies the chronology inverts, and cycles in it.

    A dependency (Ei, Ej) is violated when the chronology lets Ej reach Ei
    but not the other way round. Dependencies on events outside the
    behavior are ignored.

    Raises:
        UnknownEventError: if the behavior uses an event absent from ``deps``.
    """
    unknown = set(behavior.event_ids) - set(deps.nodes)
    if unknown:
        raise UnknownEventError(unknown)

    graph = behavior.graph()
    diagnostics: List[Diagnostic] = []
    for ei, ej in deps.edges:
        if ei not in graph or ej not in graph:
            continue
        if nx.has_path(graph, ej, ei) and not nx.has_path(graph, ei, ej):
            diagnostics.append(
                error(
                    Code.DEP_VIOLATION,
                    f"{ei}->{ej}",
                    f"Behavior '{behavior.id}' places {ej} before {ei}, which depends on it",
                )
            )
    if not nx.is_directed_acyclic_graph(graph):
        diagnostics.append(
            warning(Code.CYCLIC_BEHAVIOR, behavior.id, f"Behavior '{behavior.id}' contains a cycle")
        )
    return sort_diagnostics(diagnostics)


def linearize(behavior: BehavioralModel) -> List[str]:
    """Topological order of the behavior's events, ties broken by declaration order.

    Raises:
        CyclicBehaviorError: if the chronology has a cycle.
    """
    position = {eid: i for i, eid in enumerate(behavior.event_ids)}
    graph = behavior.graph()
    try:
        return list(
            nx.lexicographical_topological_sort(graph, key=lambda e: (position.get(e, len(position)), e))
        )
    except nx.NetworkXUnfeasible:
        raise CyclicBehaviorError(behavior.id) from None
