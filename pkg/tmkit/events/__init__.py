# tmkit/events/__init__.py
"""Event layer: validation of declared events and their derived dependencies."""
from .dependencies import derive_dependencies
from .validation import EventValidator, validate_event

__all__ = [
    'EventValidator',
    'derive_dependencies',
    'validate_event',
]
