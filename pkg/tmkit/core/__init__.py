# tmkit/core/__init__.py
"""Core domain types, model construction and base classes."""
from .base import BaseConnector, BaseValidator, PipelineStep
from .diagnostics import (
    Code,
    Diagnostic,
    ParseCode,
    ParseError,
    Severity,
    SourceSpan,
    StructureCode,
    StructureError,
    has_errors,
    sort_diagnostics,
)
from .exceptions import (
    CyclicBehaviorError,
    CyclicEventError,
    DeserializationError,
    EmptyKindsError,
    InvalidEventError,
    ParseFailure,
    SimulationError,
    StarvedFlowError,
    StructureErrors,
    TmkitError,
    UnknownActionError,
    UnknownEventError,
    UnknownThimacError,
)
from .model import ModelAssembler, build_model, descendants, induced_subgraph
from .types import (
    ALL_LINK_KINDS,
    Action,
    ActionKind,
    BehavioralModel,
    DependencyGraph,
    Event,
    Flow,
    LinkKind,
    Mode,
    ModelDocument,
    PartLink,
    StaticModel,
    Subgraph,
    Thimac,
    Trigger,
)

__all__ = [
    'BaseConnector',
    'BaseValidator',
    'PipelineStep',
    'Code',
    'Diagnostic',
    'ParseCode',
    'ParseError',
    'Severity',
    'SourceSpan',
    'StructureCode',
    'StructureError',
    'has_errors',
    'sort_diagnostics',
    'CyclicBehaviorError',
    'CyclicEventError',
    'DeserializationError',
    'EmptyKindsError',
    'InvalidEventError',
    'ParseFailure',
    'SimulationError',
    'StarvedFlowError',
    'StructureErrors',
    'TmkitError',
    'UnknownActionError',
    'UnknownEventError',
    'UnknownThimacError',
    'ModelAssembler',
    'build_model',
    'descendants',
    'induced_subgraph',
    'ALL_LINK_KINDS',
    'Action',
    'ActionKind',
    'BehavioralModel',
    'DependencyGraph',
    'Event',
    'Flow',
    'LinkKind',
    'Mode',
    'ModelDocument',
    'PartLink',
    'StaticModel',
    'Subgraph',
    'Thimac',
    'Trigger',
]
