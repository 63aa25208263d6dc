# tmkit/validators/aggregation.py
"""Composition cascades and behavioral aggregation."""
from typing import FrozenSet, Iterable, Tuple

from ..core.exceptions import EmptyKindsError
from ..core.model import descendants
from ..core.types import ALL_LINK_KINDS, ActionKind, LinkKind, StaticModel


def deletion_impact(model: StaticModel, thimac_id: str) -> FrozenSet[str]:
    """Thimacs removed together with ``thimac_id``.

    Closed under composite links only; a shared part survives the deletion
    of any of its wholes.
    """
    return descendants(model, thimac_id, {LinkKind.COMPOSITE}) | {thimac_id}


def behavioral_aggregation(
    model: StaticModel, whole: str, kinds: Iterable[ActionKind]
) -> FrozenSet[Tuple[str, ActionKind]]:
    """(part, kind) pairs implied when ``whole`` performs each of ``kinds``."""
    wanted = frozenset(ActionKind(k) for k in kinds)
    parts = descendants(model, whole, ALL_LINK_KINDS)
    if not wanted:
        raise EmptyKindsError()
    return frozenset((part, kind) for part in parts for kind in wanted)
