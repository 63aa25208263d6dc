# tmkit/export/schema.py
"""Pydantic schema of the JSON interchange format."""
from typing import Annotated, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt, StrictStr

from ..utils.config import SCHEMA_VERSION

ActionKindName = Literal["create", "process", "release", "transfer", "receive"]
Pair = Annotated[List[StrictStr], Field(min_length=2, max_length=2)]


class _Record(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ThimacRecord(_Record):
    id: StrictStr
    name: StrictStr
    parent: Optional[StrictStr] = None
    declared_oo: StrictBool = False


class PartLinkRecord(_Record):
    whole: StrictStr
    part: StrictStr
    kind: Literal["composite", "shared"]


class ActionRecord(_Record):
    id: StrictStr
    kind: ActionKindName
    owner: StrictStr
    thing_label: Optional[StrictStr] = None


class EdgeRecord(_Record):
    src: StrictStr
    dst: StrictStr


class EventRecord(_Record):
    id: StrictStr
    name: StrictStr
    action_ids: Annotated[List[StrictStr], Field(min_length=1)]
    time_label: StrictStr = ""


class BehaviorRecord(_Record):
    id: StrictStr
    event_ids: List[StrictStr]
    edges: List[Pair]


class DocumentRecord(_Record):
    tmkit_version: Literal[SCHEMA_VERSION]
    thimacs: List[ThimacRecord]
    part_links: List[PartLinkRecord]
    actions: List[ActionRecord]
    flows: List[EdgeRecord]
    triggers: List[EdgeRecord]
    events: List[EventRecord]
    behaviors: List[BehaviorRecord]


class TokenRecord(_Record):
    id: StrictInt
    origin: Literal["EXTERNAL", "CREATED", "TRIGGERED"]
    birth_action: StrictStr
    label: Optional[StrictStr] = None
    history: List[StrictStr]


class FiringRecordModel(_Record):
    event: StrictStr
    action: StrictStr
    kind: ActionKindName
    cause: Literal["fire", "supply", "trigger"]
    consumed: List[StrictInt]
    emitted: List[StrictInt]
    exited: List[StrictInt]


class LocationRecord(_Record):
    token: StrictInt
    action: StrictStr


class TraceRecord(_Record):
    tmkit_version: Literal[SCHEMA_VERSION]
    tokens: List[TokenRecord]
    firings: List[FiringRecordModel]
    exits: List[StrictInt]
    final_locations: List[LocationRecord]


def json_pointer(loc) -> str:
    """Pydantic error location as a JSON pointer."""
    parts = [str(p).replace("~", "~0").replace("/", "~1") for p in loc]
    return "/" + "/".join(parts) if parts else ""
