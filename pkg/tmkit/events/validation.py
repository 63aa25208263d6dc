# tmkit/events/validation.py
import logging
from typing import Iterable, List, Optional

import networkx as nx

from ..core.base import BaseValidator
from ..core.diagnostics import Code, Diagnostic, error, sort_diagnostics, warning
from ..core.model import induced_subgraph
from ..core.types import Event, StaticModel


def validate_event(model: StaticModel, event: Event) -> List[Diagnostic]:
    """Check that an event is a non-empty, connected subdiagram of ``model``."""
    if not event.action_ids:
        return [error(Code.EMPTY_EVENT, event.id, f"Event '{event.id}' covers no actions")]

    unknown = sorted(event.action_ids - model.action_index.keys())
    if unknown:
        return sort_diagnostics(
            error(Code.UNKNOWN_ACTION, event.id, f"Event '{event.id}' refers to undeclared action '{ref}'")
            for ref in unknown
        )

    sub = induced_subgraph(model, event.action_ids)
    graph = nx.Graph()
    graph.add_nodes_from(sub.action_ids)
    graph.add_edges_from((f.src, f.dst) for f in sub.flows)
    graph.add_edges_from((t.src, t.dst) for t in sub.triggers)
    components = nx.number_connected_components(graph)
    if components > 1:
        return [
            warning(
                Code.DISCONNECTED_EVENT,
                event.id,
                f"Event '{event.id}' falls apart into {components} unconnected pieces",
            )
        ]
    return []


class EventValidator(BaseValidator):
    """Validates a set of events against the model they are declared over."""

    def __init__(self, events: Iterable[Event], logger: Optional[logging.Logger] = None):
        self.events = list(events)
        self.logger = logger or logging.getLogger(__name__)

    def validate(self, model: StaticModel) -> List[Diagnostic]:
        diagnostics: List[Diagnostic] = []
        for event in self.events:
            found = validate_event(model, event)
            if found:
                self.logger.debug(f"Event {event.id}: {len(found)} finding(s)")
            diagnostics.extend(found)
        return diagnostics
