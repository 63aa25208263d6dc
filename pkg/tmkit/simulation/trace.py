# tmkit/simulation/trace.py
"""Tokens, firing records and traces produced by the simulator."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from ..core.types import ActionKind


class TokenOrigin(str, Enum):
    EXTERNAL = "EXTERNAL"
    CREATED = "CREATED"
    TRIGGERED = "TRIGGERED"


class FiringCause(str, Enum):
    """Why a record exists.

    ``fire`` is the action's own firing, ``supply`` an EXTERNAL token handed
    in by the environment, ``trigger`` a TRIGGERED token started by a trigger.
    """

    FIRE = "fire"
    SUPPLY = "supply"
    TRIGGER = "trigger"


@dataclass(frozen=True)
class Token:
    id: int
    origin: TokenOrigin
    birth_action: str
    label: Optional[str] = None
    history: Tuple[str, ...] = ()


@dataclass(frozen=True)
class FiringRecord:
    event: str
    action: str
    kind: ActionKind
    cause: FiringCause = FiringCause.FIRE
    consumed: Tuple[int, ...] = ()
    emitted: Tuple[int, ...] = ()
    exited: Tuple[int, ...] = ()

    def format(self) -> str:
        line = (
            f"fire {self.event} {self.action} "
            f"consumed=[{', '.join(map(str, self.consumed))}] "
            f"emitted=[{', '.join(map(str, self.emitted))}]"
        )
        if self.cause is not FiringCause.FIRE:
            line += f" via={self.cause.value}"
        if self.exited:
            line += f" exited=[{', '.join(map(str, self.exited))}]"
        return line


@dataclass(frozen=True)
class Trace:
    firings: Tuple[FiringRecord, ...] = ()
    tokens: Tuple[Token, ...] = ()
    exits: Tuple[int, ...] = ()
    final_locations: Dict[int, str] = field(default_factory=dict)

    @property
    def events_fired(self) -> Tuple[str, ...]:
        """Event ids in firing order, each listed once."""
        seen: Dict[str, None] = {}
        for record in self.firings:
            seen.setdefault(record.event, None)
        return tuple(seen)

    def minted(self, origin: Optional[TokenOrigin] = None) -> int:
        return sum(1 for t in self.tokens if origin is None or t.origin is origin)
