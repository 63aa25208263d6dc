# tmkit/core/model.py
"""Validated construction of static models and graph queries over them."""
import dataclasses
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from .diagnostics import StructureCode, StructureError
from .exceptions import StructureErrors, UnknownActionError, UnknownThimacError
from .types import (
    Action,
    Flow,
    LinkKind,
    PartLink,
    StaticModel,
    Subgraph,
    Thimac,
    Trigger,
)

logger = logging.getLogger(__name__)


class ModelAssembler:
    """Checks raw declarations against every structural invariant.

    Collects all violations instead of stopping at the first one, and
    normalizes the containment forest so that COMPOSITE links and parent
    references describe the same relation.
    """

    def __init__(
        self,
        thimacs: Iterable[Thimac] = (),
        part_links: Iterable[PartLink] = (),
        actions: Iterable[Action] = (),
        flows: Iterable[Flow] = (),
        triggers: Iterable[Trigger] = (),
        logger: Optional[logging.Logger] = None,
    ):
        self.thimacs = list(thimacs)
        self.part_links = list(part_links)
        self.actions = list(actions)
        self.flows = list(flows)
        self.triggers = list(triggers)
        self.logger = logger or logging.getLogger(__name__)
        self.errors: List[StructureError] = []

    def _report(self, code: StructureCode, kind: str, subject: str, message: str, members: Iterable[str] = ()) -> None:
        self.errors.append(StructureError(code, kind, subject, message, tuple(sorted(members))))

    def _unique_thimacs(self) -> Dict[str, Thimac]:
        index: Dict[str, Thimac] = {}
        siblings: Set[Tuple[Optional[str], str]] = set()
        for thimac in self.thimacs:
            if thimac.id in index:
                self._report(StructureCode.DUPLICATE_ID, "thimac", thimac.id, f"Thimac id '{thimac.id}' is declared twice")
                continue
            index[thimac.id] = thimac
            if (thimac.parent, thimac.name) in siblings:
                self._report(
                    StructureCode.DUPLICATE_NAME,
                    "thimac",
                    thimac.id,
                    f"Name '{thimac.name}' is used twice under '{thimac.parent or '<root>'}'",
                )
            siblings.add((thimac.parent, thimac.name))
        for thimac in index.values():
            if thimac.parent is not None and thimac.parent not in index:
                self._report(
                    StructureCode.DANGLING_REFERENCE,
                    "thimac",
                    thimac.id,
                    f"Parent '{thimac.parent}' of '{thimac.id}' is not declared",
                )
        return index

    def _checked_links(self, index: Dict[str, Thimac]) -> List[PartLink]:
        links: List[PartLink] = []
        seen: Set[Tuple[str, str]] = set()
        for link in self.part_links:
            missing = [ref for ref in (link.whole, link.part) if ref not in index]
            if missing:
                self._report(
                    StructureCode.DANGLING_REFERENCE,
                    "part_link",
                    link.key,
                    f"Part link refers to undeclared thimac(s) {', '.join(missing)}",
                )
                continue
            if (link.whole, link.part) in seen:
                self._report(StructureCode.DUPLICATE_EDGE, "part_link", link.key, f"Part link '{link.key}' is declared twice")
                continue
            seen.add((link.whole, link.part))
            links.append(link)
        return links

    def _effective_parents(self, index: Dict[str, Thimac], links: List[PartLink]) -> Dict[str, Optional[str]]:
        wholes: Dict[str, Set[str]] = {tid: set() for tid in index}
        for thimac in index.values():
            if thimac.parent in index:
                wholes[thimac.id].add(thimac.parent)
        for link in links:
            if link.kind is LinkKind.COMPOSITE:
                wholes[link.part].add(link.whole)
        parents: Dict[str, Optional[str]] = {}
        for tid, owners in wholes.items():
            if len(owners) > 1:
                self._report(
                    StructureCode.MULTIPLE_COMPOSITE_WHOLES,
                    "thimac",
                    tid,
                    f"'{tid}' is a composite part of {len(owners)} wholes: {', '.join(sorted(owners))}",
                    owners,
                )
            declared = index[tid].parent
            parents[tid] = declared if declared in index else (min(owners) if owners else None)
        return parents

    def _check_containment(self, parents: Dict[str, Optional[str]]) -> None:
        state: Dict[str, int] = {}
        for start in parents:
            path: List[str] = []
            node: Optional[str] = start
            while node is not None and state.get(node) is None:
                state[node] = 1
                path.append(node)
                node = parents.get(node)
            if node is not None and state.get(node) == 1:
                cycle = path[path.index(node):]
                self._report(
                    StructureCode.CONTAINMENT_CYCLE,
                    "thimac",
                    min(cycle),
                    f"Containment cycle through {', '.join(sorted(cycle))}",
                    cycle,
                )
            for visited in path:
                state[visited] = 2

    def _check_part_cycles(self, index: Dict[str, Thimac], links: List[PartLink]) -> None:
        graph = nx.DiGraph()
        graph.add_nodes_from(index)
        graph.add_edges_from((link.whole, link.part) for link in links)
        for component in nx.strongly_connected_components(graph):
            member = next(iter(component))
            if len(component) > 1 or graph.has_edge(member, member):
                self._report(
                    StructureCode.PART_CYCLE,
                    "thimac",
                    min(component),
                    f"Thimacs {', '.join(sorted(component))} are transitively parts of themselves",
                    component,
                )

    def _unique_actions(self, index: Dict[str, Thimac]) -> Set[str]:
        known: Set[str] = set()
        for action in self.actions:
            if action.id in known:
                self._report(StructureCode.DUPLICATE_ID, "action", action.id, f"Action id '{action.id}' is declared twice")
                continue
            known.add(action.id)
            if action.owner not in index:
                self._report(
                    StructureCode.DANGLING_REFERENCE,
                    "action",
                    action.id,
                    f"Owner '{action.owner}' of action '{action.id}' is not declared",
                )
        return known

    def _check_edges(self, edges, kind: str, known: Set[str]) -> None:
        seen: Set[Tuple[str, str]] = set()
        for edge in edges:
            missing = [ref for ref in (edge.src, edge.dst) if ref not in known]
            if missing:
                self._report(
                    StructureCode.DANGLING_REFERENCE,
                    kind,
                    edge.key,
                    f"{kind.capitalize()} refers to undeclared action(s) {', '.join(missing)}",
                )
            if edge.src == edge.dst:
                self._report(StructureCode.SELF_FLOW, kind, edge.key, f"{kind.capitalize()} '{edge.key}' starts and ends at the same action")
            if (edge.src, edge.dst) in seen:
                self._report(StructureCode.DUPLICATE_EDGE, kind, edge.key, f"{kind.capitalize()} '{edge.key}' is declared twice")
            seen.add((edge.src, edge.dst))

    def assemble(self) -> StaticModel:
        index = self._unique_thimacs()
        links = self._checked_links(index)
        parents = self._effective_parents(index, links)
        self._check_containment(parents)

        implied = [
            PartLink(parent, tid, LinkKind.COMPOSITE)
            for tid, parent in parents.items()
            if parent is not None
        ]
        implied_pairs = {(link.whole, link.part) for link in implied}
        for link in links:
            if link.kind is LinkKind.SHARED and (link.whole, link.part) in implied_pairs:
                self._report(
                    StructureCode.DUPLICATE_EDGE,
                    "part_link",
                    link.key,
                    f"'{link.part}' is both a composite and a shared part of '{link.whole}'",
                )
        all_links = implied + [link for link in links if (link.whole, link.part) not in implied_pairs]
        self._check_part_cycles(index, all_links)

        known = self._unique_actions(index)
        self._check_edges(self.flows, "flow", known)
        self._check_edges(self.triggers, "trigger", known)

        if self.errors:
            self.logger.debug(f"Rejected model with {len(self.errors)} structural error(s)")
            raise StructureErrors(self.errors)

        thimacs = tuple(
            dataclasses.replace(t, parent=parents[t.id]) if t.parent != parents[t.id] else t
            for t in index.values()
        )
        return StaticModel(
            thimacs=thimacs,
            part_links=tuple(all_links),
            actions=tuple(self.actions),
            flows=tuple(self.flows),
            triggers=tuple(self.triggers),
        )


def build_model(
    thimacs: Iterable[Thimac] = (),
    part_links: Iterable[PartLink] = (),
    actions: Iterable[Action] = (),
    flows: Iterable[Flow] = (),
    triggers: Iterable[Trigger] = (),
) -> StaticModel:
    """Build a validated static model.

    Raises:
        StructureErrors: listing every violated invariant.
    """
    return ModelAssembler(thimacs, part_links, actions, flows, triggers).assemble()


def descendants(model: StaticModel, thimac_id: str, kinds: Iterable[LinkKind]) -> FrozenSet[str]:
    """Thimacs transitively reachable from ``thimac_id`` over links of ``kinds``."""
    if thimac_id not in model.thimac_index:
        raise UnknownThimacError(thimac_id)
    return frozenset(nx.descendants(model.part_graph(kinds), thimac_id))


def induced_subgraph(model: StaticModel, action_ids: Iterable[str]) -> Subgraph:
    wanted = set(action_ids)
    unknown = wanted - model.action_index.keys()
    if unknown:
        raise UnknownActionError(unknown)
    return Subgraph(
        actions=tuple(a for a in model.actions if a.id in wanted),
        flows=tuple(f for f in model.flows if f.src in wanted and f.dst in wanted),
        triggers=tuple(t for t in model.triggers if t.src in wanted and t.dst in wanted),
    )
