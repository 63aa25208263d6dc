# tmkit/validators/encapsulation.py
"""Object-thimac encapsulation and the computed OO/NON_OO/LEAF classification."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple, Union

import pandas as pd

from ..core.base import BaseValidator
from ..core.diagnostics import Code, Diagnostic, error, sort_diagnostics
from ..core.model import descendants
from ..core.types import Flow, LinkKind, StaticModel, Trigger

Edge = Union[Flow, Trigger]


class Verdict(str, Enum):
    OO = "OO"
    NON_OO = "NON_OO"
    LEAF = "LEAF"


@dataclass(frozen=True)
class Classification:
    thimac: str
    verdict: Verdict
    declared_oo: bool = False
    note: Optional[str] = None

    @property
    def mismatch(self) -> bool:
        """Declared an object thimac, yet some part is reachable from outside."""
        return self.declared_oo and self.verdict is Verdict.NON_OO


def crosses_boundary(owner_a: str, owner_b: str, thimac_id: str, inside: FrozenSet[str]) -> bool:
    """True when exactly one owner is a composite descendant and the other lies outside the thimac."""
    enclosed = inside | {thimac_id}
    return (owner_a in inside and owner_b not in enclosed) or (owner_b in inside and owner_a not in enclosed)


def bypass_edges(model: StaticModel, thimac_id: str) -> List[Edge]:
    """Flows and triggers that reach a composite part of ``thimac_id`` around its machine."""
    inside = descendants(model, thimac_id, {LinkKind.COMPOSITE})
    if not inside:
        return []
    edges: Iterable[Edge] = (*model.flows, *model.triggers)
    return [
        e for e in edges
        if crosses_boundary(model.owner_of(e.src), model.owner_of(e.dst), thimac_id, inside)
    ]


class EncapsulationValidator(BaseValidator):
    """Reports every edge that bypasses the boundary of a declared object thimac."""

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def validate(self, model: StaticModel) -> List[Diagnostic]:
        diagnostics: List[Diagnostic] = []
        for thimac in model.thimacs:
            if not thimac.declared_oo:
                continue
            for edge in bypass_edges(model, thimac.id):
                diagnostics.append(
                    error(
                        Code.BOUNDARY_BYPASS,
                        edge.key,
                        f"Edge reaches a part of object thimac '{thimac.id}' without passing through its machine",
                    )
                )
        self.logger.debug(f"Encapsulation: {len(diagnostics)} bypass edge(s)")
        return diagnostics


def check_oo_encapsulation(model: StaticModel) -> List[Diagnostic]:
    return sort_diagnostics(EncapsulationValidator().validate(model))


def classify(model: StaticModel) -> List[Classification]:
    """Computed classification of every thimac, in declaration order.

    LEAF when the thimac has no parts at all; otherwise OO when no edge
    bypasses it, NON_OO when one does. ``declared_oo`` does not influence
    the verdict.
    """
    wholes = {}
    for link in model.part_links:
        wholes.setdefault(link.whole, set()).add(link.kind)

    result: List[Classification] = []
    for thimac in model.thimacs:
        kinds = wholes.get(thimac.id)
        if not kinds:
            result.append(Classification(thimac.id, Verdict.LEAF, thimac.declared_oo))
            continue
        verdict = Verdict.NON_OO if bypass_edges(model, thimac.id) else Verdict.OO
        note = "only shared parts; nothing is enclosed" if kinds == {LinkKind.SHARED} else None
        result.append(Classification(thimac.id, verdict, thimac.declared_oo, note))
    return result


def classification_frame(classifications: Iterable[Classification]) -> pd.DataFrame:
    """Tabular view used by the ``classify`` command, sorted by thimac id."""
    rows: List[Tuple] = [
        (c.thimac, c.declared_oo, c.verdict.value, c.mismatch, c.note or "")
        for c in classifications
    ]
    frame = pd.DataFrame(rows, columns=["thimac", "declared_oo", "verdict", "mismatch", "note"])
    return frame.sort_values("thimac", kind="stable").reset_index(drop=True)
