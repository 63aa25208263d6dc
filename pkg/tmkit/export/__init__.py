# tmkit/export/__init__.py
"""Deterministic DOT and canonical JSON output."""
from .canonical import document_to_dict, from_json, to_json, trace_to_dict
from .dot import DotDocument, to_dot_behavior, to_dot_static

__all__ = [
    'DotDocument',
    'document_to_dict',
    'from_json',
    'to_dot_behavior',
    'to_dot_static',
    'to_json',
    'trace_to_dict',
]
