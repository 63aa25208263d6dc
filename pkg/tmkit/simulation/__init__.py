# tmkit/simulation/__init__.py
"""Behavioral model: chronology checks and token simulation."""
from .chronology import linearize, validate_chronology
from .engine import Simulator, simulate
from .trace import FiringCause, FiringRecord, Token, TokenOrigin, Trace

__all__ = [
    'FiringCause',
    'FiringRecord',
    'Simulator',
    'Token',
    'TokenOrigin',
    'Trace',
    'linearize',
    'simulate',
    'validate_chronology',
]
