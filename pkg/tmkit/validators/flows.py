# tmkit/validators/flows.py
import logging
from typing import FrozenSet, List, Optional, Tuple, Union

from ..core.base import BaseValidator
from ..core.diagnostics import Code, Diagnostic, Severity, error, sort_diagnostics, warning
from ..core.types import ActionKind, Mode, StaticModel

A = ActionKind

LEGAL_INTRA_PAIRS: FrozenSet[Tuple[ActionKind, ActionKind]] = frozenset(
    {
        (A.RECEIVE, A.PROCESS),
        (A.RECEIVE, A.RELEASE),
        (A.PROCESS, A.RELEASE),
        (A.CREATE, A.PROCESS),
        (A.CREATE, A.RELEASE),
        (A.RELEASE, A.TRANSFER),
        (A.TRANSFER, A.RECEIVE),
    }
)

LEGAL_INTER_PAIRS: FrozenSet[Tuple[ActionKind, ActionKind]] = frozenset({(A.TRANSFER, A.TRANSFER)})


def is_legal_flow(src_kind: ActionKind, dst_kind: ActionKind, same_owner: bool) -> bool:
    table = LEGAL_INTRA_PAIRS if same_owner else LEGAL_INTER_PAIRS
    return (src_kind, dst_kind) in table


class FlowLegalityValidator(BaseValidator):
    """Checks every flow against the canonical machine topology.

    Flows inside one machine must follow the intra-machine pair table; flows
    between machines may only join two transfer actions. In RELAXED mode the
    same findings are reported as warnings. Triggers are never restricted,
    but a trigger inside a single machine is worth a warning.
    """

    def __init__(self, mode: Union[Mode, str] = Mode.STRICT, logger: Optional[logging.Logger] = None):
        self.mode = Mode(mode)
        self.logger = logger or logging.getLogger(__name__)

    @property
    def severity(self) -> Severity:
        return Severity.ERROR if self.mode is Mode.STRICT else Severity.WARNING

    def validate(self, model: StaticModel) -> List[Diagnostic]:
        diagnostics: List[Diagnostic] = []
        for flow in model.flows:
            src = model.action_index[flow.src]
            dst = model.action_index[flow.dst]
            same_owner = src.owner == dst.owner
            if is_legal_flow(src.kind, dst.kind, same_owner):
                continue
            if same_owner:
                diagnostics.append(
                    error(
                        Code.ILLEGAL_INTRA_FLOW,
                        flow.key,
                        f"{src.kind.value} -> {dst.kind.value} is not a legal hop inside machine '{src.owner}'",
                        self.severity,
                    )
                )
            else:
                diagnostics.append(
                    error(
                        Code.ILLEGAL_INTER_FLOW,
                        flow.key,
                        f"{src.kind.value} -> {dst.kind.value} between '{src.owner}' and '{dst.owner}' "
                        f"must run transfer -> transfer",
                        self.severity,
                    )
                )
        for trig in model.triggers:
            owner = model.owner_of(trig.src)
            if owner == model.owner_of(trig.dst):
                diagnostics.append(
                    warning(Code.SAME_MACHINE_TRIGGER, trig.key, f"Trigger stays inside machine '{owner}'")
                )
        self.logger.debug(f"Flow legality ({self.mode.value}): {len(diagnostics)} finding(s)")
        return diagnostics


def check_flow_legality(model: StaticModel, mode: Union[Mode, str] = Mode.STRICT) -> List[Diagnostic]:
    return sort_diagnostics(FlowLegalityValidator(mode).validate(model))
