# tmkit/core/types.py
"""Domain types of the thinging-machine model.

All values are immutable once built. Collections keep declaration order
(tuples) while equality between models is structural.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx


class ActionKind(str, Enum):
    """The five generic actions every machine is built from."""

    CREATE = "create"
    PROCESS = "process"
    RELEASE = "release"
    TRANSFER = "transfer"
    RECEIVE = "receive"


class LinkKind(str, Enum):
    COMPOSITE = "composite"
    SHARED = "shared"


class Mode(str, Enum):
    """Strictness shared by flow legality checks and the simulator."""

    STRICT = "strict"
    RELAXED = "relaxed"


ALL_LINK_KINDS: FrozenSet[LinkKind] = frozenset(LinkKind)


@dataclass(frozen=True)
class Thimac:
    id: str
    name: str
    parent: Optional[str] = None
    declared_oo: bool = False


@dataclass(frozen=True)
class PartLink:
    whole: str
    part: str
    kind: LinkKind = LinkKind.COMPOSITE

    @property
    def key(self) -> str:
        return f"{self.whole}=>{self.part}"


@dataclass(frozen=True)
class Action:
    id: str
    kind: ActionKind
    owner: str
    thing_label: Optional[str] = None

    @staticmethod
    def make_id(kind: ActionKind, owner: str, thing_label: Optional[str] = None) -> str:
        """Canonical reference of an action: ``kind.thimac-path[:label]``."""
        base = f"{ActionKind(kind).value}.{owner}"
        return f"{base}:{thing_label}" if thing_label else base

    @property
    def display(self) -> str:
        return f"{self.kind.value}:{self.thing_label}" if self.thing_label else self.kind.value


@dataclass(frozen=True)
class Flow:
    src: str
    dst: str

    @property
    def key(self) -> str:
        return f"{self.src}->{self.dst}"


@dataclass(frozen=True)
class Trigger:
    src: str
    dst: str

    @property
    def key(self) -> str:
        return f"{self.src}~>{self.dst}"


@dataclass(frozen=True, eq=False)
class StaticModel:
    """The complete thimac/action/flow/trigger graph of a domain.

    Instances are produced by :func:`tmkit.core.model.build_model`, which
    guarantees the referential invariants. Lookup tables are derived lazily
    and cached on the instance.
    """

    thimacs: Tuple[Thimac, ...] = ()
    part_links: Tuple[PartLink, ...] = ()
    actions: Tuple[Action, ...] = ()
    flows: Tuple[Flow, ...] = ()
    triggers: Tuple[Trigger, ...] = ()

    def _structure(self) -> Tuple[FrozenSet, ...]:
        return (
            frozenset(self.thimacs),
            frozenset(self.part_links),
            frozenset(self.actions),
            frozenset(self.flows),
            frozenset(self.triggers),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StaticModel):
            return NotImplemented
        return self._structure() == other._structure()

    def __hash__(self) -> int:
        return hash(self._structure())

    @cached_property
    def thimac_index(self) -> Dict[str, Thimac]:
        return {t.id: t for t in self.thimacs}

    @cached_property
    def action_index(self) -> Dict[str, Action]:
        return {a.id: a for a in self.actions}

    @cached_property
    def action_order(self) -> Dict[str, int]:
        """Declaration position of every action, used to break ties."""
        return {a.id: i for i, a in enumerate(self.actions)}

    @cached_property
    def inbound_flows(self) -> Dict[str, Tuple[Flow, ...]]:
        return _group(self.flows, lambda f: f.dst)

    @cached_property
    def outbound_flows(self) -> Dict[str, Tuple[Flow, ...]]:
        return _group(self.flows, lambda f: f.src)

    @cached_property
    def inbound_triggers(self) -> Dict[str, Tuple[Trigger, ...]]:
        return _group(self.triggers, lambda t: t.dst)

    @cached_property
    def actions_by_owner(self) -> Dict[str, Tuple[Action, ...]]:
        return _group(self.actions, lambda a: a.owner)

    @cached_property
    def children(self) -> Dict[str, Tuple[Thimac, ...]]:
        return _group((t for t in self.thimacs if t.parent is not None), lambda t: t.parent)

    @property
    def roots(self) -> List[Thimac]:
        return [t for t in self.thimacs if t.parent is None]

    def owner_of(self, action_id: str) -> str:
        return self.action_index[action_id].owner

    def part_graph(self, kinds: Iterable[LinkKind] = ALL_LINK_KINDS) -> nx.DiGraph:
        """Whole→part graph restricted to the given link kinds."""
        wanted = {LinkKind(k) for k in kinds}
        graph = nx.DiGraph()
        graph.add_nodes_from(t.id for t in self.thimacs)
        graph.add_edges_from((link.whole, link.part) for link in self.part_links if link.kind in wanted)
        return graph

    def action_graph(self) -> nx.DiGraph:
        """Directed graph over actions carrying every flow and trigger."""
        graph = nx.DiGraph()
        graph.add_nodes_from(a.id for a in self.actions)
        graph.add_edges_from((f.src, f.dst) for f in self.flows)
        graph.add_edges_from((t.src, t.dst) for t in self.triggers)
        return graph


@dataclass(frozen=True)
class Subgraph:
    """Actions of a model together with the edges induced between them."""

    actions: Tuple[Action, ...] = ()
    flows: Tuple[Flow, ...] = ()
    triggers: Tuple[Trigger, ...] = ()

    @property
    def action_ids(self) -> FrozenSet[str]:
        return frozenset(a.id for a in self.actions)


@dataclass(frozen=True)
class Event:
    """A subdiagram of the static model bonded to an opaque time label."""

    id: str
    action_ids: FrozenSet[str] = frozenset()
    name: str = ""
    time_label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "action_ids", frozenset(self.action_ids))
        if not self.name:
            object.__setattr__(self, "name", self.id)


@dataclass(frozen=True)
class BehavioralModel:
    """Chronology over events, as declared by the modeler."""

    id: str
    event_ids: Tuple[str, ...] = ()
    edges: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "event_ids", tuple(self.event_ids))
        object.__setattr__(self, "edges", tuple((a, b) for a, b in self.edges))

    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.event_ids)
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class DependencyGraph:
    nodes: Tuple[str, ...] = ()
    edges: Tuple[Tuple[str, str], ...] = ()
    cyclic: bool = False


@dataclass(frozen=True, eq=False)
class ModelDocument:
    """A parsed ``.tm`` file: static model, events and behaviours."""

    static: StaticModel = field(default_factory=StaticModel)
    events: Tuple[Event, ...] = ()
    behaviors: Tuple[BehavioralModel, ...] = ()

    def event(self, event_id: str) -> Optional[Event]:
        return next((e for e in self.events if e.id == event_id), None)

    def behavior(self, behavior_id: str) -> Optional[BehavioralModel]:
        return next((b for b in self.behaviors if b.id == behavior_id), None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelDocument):
            return NotImplemented
        return (
            self.static == other.static
            and {e.id: e for e in self.events} == {e.id: e for e in other.events}
            and {b.id: b for b in self.behaviors} == {b.id: b for b in other.behaviors}
        )

    def __hash__(self) -> int:
        return hash((self.static, frozenset(self.events), frozenset(self.behaviors)))


def _group(items, key) -> Dict:
    grouped: Dict = {}
    for item in items:
        grouped.setdefault(key(item), []).append(item)
    return {k: tuple(v) for k, v in grouped.items()}
