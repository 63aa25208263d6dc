# tmkit/core/base.py
from abc import ABC, abstractmethod
from typing import Any, List, Optional

from .diagnostics import Diagnostic, Severity
from .types import StaticModel


class BaseConnector(ABC):
    """Base class for all file connectors."""

    @abstractmethod
    def load(self) -> Any:
        """Load a document or trace from source."""
        pass

    @abstractmethod
    def save(self, value: Any) -> None:
        """Save a document or trace to destination."""
        pass


class BaseValidator(ABC):
    """Base class for all model validators."""

    @abstractmethod
    def validate(self, model: StaticModel) -> List[Diagnostic]:
        """Validate the model and return its findings."""
        pass


class PipelineStep:
    """Represents a single validator in a check pipeline."""

    def __init__(self, validator: BaseValidator, name: Optional[str] = None):
        self.validator = validator
        self.name = name or validator.__class__.__name__
        self.metrics = {}

    def execute(self, model: StaticModel) -> List[Diagnostic]:
        """Execute the pipeline step."""
        diagnostics = self.validator.validate(model)
        self.metrics = {
            "diagnostics": len(diagnostics),
            "errors": sum(1 for d in diagnostics if d.severity is Severity.ERROR),
        }
        return diagnostics
