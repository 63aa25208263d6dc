# tmkit/pipeline/builder.py
import logging
from typing import Iterable, List, Optional, Union

from ..core.base import BaseValidator, PipelineStep
from ..core.diagnostics import Diagnostic, sort_diagnostics
from ..core.types import Event, Mode, ModelDocument, StaticModel
from ..events.validation import EventValidator
from ..validators.encapsulation import EncapsulationValidator
from ..validators.flows import FlowLegalityValidator


class CheckPipelineBuilder:
    def __init__(self):
        self.steps: List[PipelineStep] = []
        self.logger = None

    def add_step(self, validator: BaseValidator, name: Optional[str] = None) -> 'CheckPipelineBuilder':
        """Add a validator to the pipeline."""
        self.steps.append(PipelineStep(validator, name))
        return self

    def set_logger(self, logger: logging.Logger) -> 'CheckPipelineBuilder':
        self.logger = logger
        return self

    def build(self) -> 'CheckPipeline':
        """Build and return the pipeline."""
        return CheckPipeline(steps=self.steps, logger=self.logger)


class CheckPipeline:
    """Runs validators in order and merges their findings."""

    def __init__(self, steps: List[PipelineStep], logger: Optional[logging.Logger] = None):
        self.steps = steps
        self.logger = logger or logging.getLogger(__name__)

    def run(self, model: StaticModel) -> List[Diagnostic]:
        """Run every step and return the sorted union of their diagnostics."""
        diagnostics: List[Diagnostic] = []
        for step in self.steps:
            found = step.execute(model)
            self.logger.info(f"{step.name}: {step.metrics['diagnostics']} finding(s), {step.metrics['errors']} error(s)")
            diagnostics.extend(found)
        return sort_diagnostics(diagnostics)


def default_pipeline(
    mode: Union[Mode, str] = Mode.RELAXED,
    events: Iterable[Event] = (),
    logger: Optional[logging.Logger] = None,
) -> CheckPipeline:
    """Flow legality, encapsulation and event validation, as run by ``tmkit check``."""
    builder = (
        CheckPipelineBuilder()
        .add_step(FlowLegalityValidator(mode, logger=logger), "flow-legality")
        .add_step(EncapsulationValidator(logger=logger), "encapsulation")
        .add_step(EventValidator(events, logger=logger), "events")
    )
    if logger is not None:
        builder.set_logger(logger)
    return builder.build()


def check_document(doc: ModelDocument, mode: Union[Mode, str] = Mode.RELAXED) -> List[Diagnostic]:
    return default_pipeline(mode, doc.events).run(doc.static)
