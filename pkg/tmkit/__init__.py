# tmkit/__init__.py
"""tmkit - A toolkit for thinging-machine conceptual models."""
__version__ = "0.1.0"

from .core import (
    ActionKind,
    LinkKind,
    Mode,
    ModelDocument,
    StaticModel,
    build_model,
    descendants,
    induced_subgraph,
)
from .parser import parse, round_trip

__all__ = [
    'ActionKind',
    'LinkKind',
    'Mode',
    'ModelDocument',
    'StaticModel',
    'build_model',
    'descendants',
    'induced_subgraph',
    'parse',
    'round_trip',
    '__version__',
]
