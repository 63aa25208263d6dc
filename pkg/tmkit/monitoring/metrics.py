# tmkit/monitoring/metrics.py
import logging
from dataclasses import dataclass
from datetime import datetime
from typing import Dict, Optional

import pandas as pd

from ..core.types import ActionKind
from ..simulation.trace import FiringCause, Trace
from ..utils.config import TIME_BUDGET_SECONDS


@dataclass(frozen=True)
class ConservationReport:
    """Outcome of the three token-conservation checks on a trace."""

    process_neutral: bool = True
    process_firings: int = 0
    exits_via_transfer: bool = True
    exits: int = 0
    mint_accounting: bool = True
    minted: int = 0
    resident: int = 0

    @property
    def passed(self) -> bool:
        return self.process_neutral and self.exits_via_transfer and self.mint_accounting

    def to_frame(self) -> pd.DataFrame:
        rows = [
            ("process_neutral", self.process_neutral, f"{self.process_firings} process firing(s)"),
            ("exits_via_transfer", self.exits_via_transfer, f"{self.exits} exit(s)"),
            ("mint_accounting", self.mint_accounting, f"minted={self.minted} resident={self.resident} exited={self.exits}"),
        ]
        frame = pd.DataFrame(rows, columns=["check", "passed", "detail"])
        frame["passed"] = frame["passed"].map({True: "PASS", False: "FAIL"})
        return frame

    def format(self) -> str:
        return self.to_frame().to_string(index=False)


def conservation_check(trace: Trace) -> ConservationReport:
    """Replay a trace and verify that tokens are neither lost nor invented.

    1. PROCESS firings emit nothing and let nothing leave.
    2. Every exited token was last located at a TRANSFER action.
    3. Minted tokens are exactly those still resident plus those exited.
    """
    process_firings = 0
    process_neutral = True
    exits_ok = True
    location: Dict[int, str] = {}
    minted: Dict[int, None] = {}
    duplicate_mint = False

    for record in trace.firings:
        for token_id in record.consumed:
            location[token_id] = record.action
        for token_id in record.emitted:
            if token_id in minted:
                duplicate_mint = True
            minted[token_id] = None
            location[token_id] = record.action
        if record.kind is ActionKind.PROCESS and record.cause is FiringCause.FIRE:
            process_firings += 1
            if record.emitted or record.exited:
                process_neutral = False
        for token_id in record.exited:
            if location.get(token_id) != record.action or record.kind is not ActionKind.TRANSFER:
                exits_ok = False
            location.pop(token_id, None)

    exits = list(trace.exits)
    resident = set(trace.final_locations)
    accounted = resident | set(exits)
    mint_ok = (
        not duplicate_mint
        and len(exits) == len(set(exits))
        and not (resident & set(exits))
        and len(minted) == len(resident) + len(exits)
        and accounted == set(minted)
    )
    return ConservationReport(
        process_neutral=process_neutral,
        process_firings=process_firings,
        exits_via_transfer=exits_ok and set(exits) <= set(minted),
        exits=len(exits),
        mint_accounting=mint_ok,
        minted=len(minted),
        resident=len(resident),
    )


class ResourceMonitor:
    def __init__(self, budget_seconds: float = TIME_BUDGET_SECONDS, logger: Optional[logging.Logger] = None):
        self.budget_seconds = budget_seconds
        self.logger = logger or logging.getLogger(__name__)
        self.start_time = None
        self.metrics = {}

    def start(self) -> 'ResourceMonitor':
        """Start timing."""
        self.start_time = datetime.now()
        return self

    def stop(self) -> 'ResourceMonitor':
        """Stop timing and collect the duration."""
        self.metrics["duration"] = (datetime.now() - self.start_time).total_seconds()
        return self

    def alert_on_anomalies(self) -> None:
        """Warn when the run took longer than its budget."""
        duration = self.metrics.get("duration", 0)
        if duration > self.budget_seconds:
            self.logger.warning(f"Run took {duration:.2f}s, over the {self.budget_seconds:.2f}s budget")
