# tmkit/simulation/engine.py
"""Deterministic token simulation of a behavioral model."""
import bisect
import logging
from typing import Dict, Iterable, List, Optional, Set, Union

import networkx as nx

from ..core.exceptions import CyclicEventError, StarvedFlowError, UnknownEventError
from ..core.model import induced_subgraph
from ..core.types import Action, ActionKind, BehavioralModel, Event, Mode, StaticModel
from .chronology import linearize
from .trace import FiringCause, FiringRecord, Token, TokenOrigin, Trace


class Simulator:
    """Fires the events of a behavior in chronological order.

    Within an event, actions fire in topological order of the event's
    subgraph with declaration order breaking ties. Tokens sit on actions;
    a flow moves the lowest-numbered token of its source to its target.
    RELAXED mode lets the environment supply EXTERNAL tokens where a flow
    or a boundary action would otherwise starve; STRICT mode raises instead.
    A trigger is enabled once its source has fired while holding a token,
    whether or not that token has since moved on.
    """

    def __init__(
        self,
        model: StaticModel,
        mode: Union[Mode, str] = Mode.RELAXED,
        logger: Optional[logging.Logger] = None,
    ):
        self.model = model
        self.mode = Mode(mode)
        self.logger = logger or logging.getLogger(__name__)
        self._reset()

    def _reset(self) -> None:
        self._residents: Dict[str, List[int]] = {}
        self._tokens: Dict[int, Token] = {}
        self._histories: Dict[int, List[str]] = {}
        self._firings: List[FiringRecord] = []
        self._exits: List[int] = []
        # actions that have fired while holding at least one token
        self._fired_holding: Set[str] = set()

    def run(self, events: Iterable[Event], behavior: BehavioralModel) -> Trace:
        """Simulate ``behavior`` over ``events`` and return the trace.

        Raises:
            UnknownEventError: the behavior names an event not in ``events``.
            CyclicBehaviorError: the chronology has a cycle.
            CyclicEventError: an event's actions form a cycle.
            StarvedFlowError: STRICT mode and a flow has no token to move.
        """
        by_id = {e.id: e for e in events}
        missing = set(behavior.event_ids) - by_id.keys()
        if missing:
            raise UnknownEventError(missing)

        self._reset()
        for event_id in linearize(behavior):
            self._fire_event(by_id[event_id])

        tokens = tuple(
            Token(t.id, t.origin, t.birth_action, t.label, tuple(self._histories[t.id]))
            for t in self._tokens.values()
        )
        final_locations = {
            token_id: action_id
            for action_id, held in self._residents.items()
            for token_id in held
        }
        trace = Trace(
            firings=tuple(self._firings),
            tokens=tokens,
            exits=tuple(sorted(self._exits)),
            final_locations=dict(sorted(final_locations.items())),
        )
        self.logger.info(
            f"Simulated '{behavior.id}': {len(trace.firings)} records, {len(tokens)} tokens, "
            f"{len(trace.exits)} exits"
        )
        return trace

    def _fire_event(self, event: Event) -> None:
        sub = induced_subgraph(self.model, event.action_ids)
        graph = nx.DiGraph()
        graph.add_nodes_from(sub.action_ids)
        graph.add_edges_from((f.src, f.dst) for f in sub.flows)
        graph.add_edges_from((t.src, t.dst) for t in sub.triggers)
        order = self.model.action_order
        try:
            sequence = list(nx.lexicographical_topological_sort(graph, key=order.__getitem__))
        except nx.NetworkXUnfeasible:
            raise CyclicEventError(event.id) from None
        self.logger.debug(f"Event {event.id}: firing {len(sequence)} action(s)")
        for action_id in sequence:
            self._fire_action(event, self.model.action_index[action_id])

    def _mint(self, origin: TokenOrigin, at: Action) -> int:
        token_id = len(self._tokens) + 1
        self._tokens[token_id] = Token(token_id, origin, at.id, at.thing_label)
        self._histories[token_id] = []
        bisect.insort(self._residents.setdefault(at.id, []), token_id)
        return token_id

    def _move(self, src: str, dst: str) -> int:
        token_id = self._residents[src].pop(0)
        bisect.insort(self._residents.setdefault(dst, []), token_id)
        return token_id

    def _holds(self, action_id: str) -> bool:
        return bool(self._residents.get(action_id))

    def _supply(self, event: Event, at: Action) -> None:
        token_id = self._mint(TokenOrigin.EXTERNAL, at)
        self._firings.append(FiringRecord(event.id, at.id, at.kind, FiringCause.SUPPLY, emitted=(token_id,)))

    def _fire_action(self, event: Event, action: Action) -> None:
        model = self.model
        consumed: List[int] = []
        inbound_flows = model.inbound_flows.get(action.id, ())
        inbound_triggers = model.inbound_triggers.get(action.id, ())

        for flow in inbound_flows:
            if self._holds(flow.src):
                consumed.append(self._move(flow.src, action.id))
                continue
            if self.mode is Mode.STRICT:
                raise StarvedFlowError(flow.key, event.id)
            if flow.src in event.action_ids:
                self.logger.debug(f"Event {event.id}: skipping empty flow {flow.key}")
                continue
            source = model.action_index[flow.src]
            if source.kind is not ActionKind.CREATE:
                self._supply(event, source)
                consumed.append(self._move(flow.src, action.id))
            elif action.kind is not ActionKind.CREATE:
                # only creations bear CREATED tokens; hand the token in at the target
                self._supply(event, action)
            else:
                self.logger.debug(f"Event {event.id}: no supply for {flow.key}")

        if action.kind is not ActionKind.CREATE and not inbound_flows and not inbound_triggers:
            if self.mode is Mode.STRICT:
                raise StarvedFlowError(action.id, event.id)
            self._supply(event, action)

        emitted: List[int] = []
        if action.kind is ActionKind.CREATE:
            if not inbound_triggers or any(t.src in self._fired_holding for t in inbound_triggers):
                emitted.append(self._mint(TokenOrigin.CREATED, action))
        else:
            for trig in inbound_triggers:
                if trig.src in self._fired_holding:
                    token_id = self._mint(TokenOrigin.TRIGGERED, action)
                    self._firings.append(
                        FiringRecord(event.id, action.id, action.kind, FiringCause.TRIGGER, emitted=(token_id,))
                    )

        exited: List[int] = []
        held = self._residents.get(action.id, [])
        if held:
            self._fired_holding.add(action.id)
        if action.kind is ActionKind.PROCESS:
            for token_id in held:
                self._histories[token_id].append(action.id)
        elif action.kind is ActionKind.TRANSFER and not model.outbound_flows.get(action.id):
            exited = list(held)
            self._exits.extend(exited)
            held.clear()

        self._firings.append(
            FiringRecord(
                event.id,
                action.id,
                action.kind,
                FiringCause.FIRE,
                consumed=tuple(consumed),
                emitted=tuple(emitted),
                exited=tuple(exited),
            )
        )


def simulate(
    model: StaticModel,
    events: Iterable[Event],
    behavior: BehavioralModel,
    mode: Union[Mode, str] = Mode.RELAXED,
) -> Trace:
    return Simulator(model, mode).run(events, behavior)
