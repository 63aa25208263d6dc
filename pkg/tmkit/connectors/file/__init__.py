# tmkit/connectors/file/__init__.py
"""File-based connectors for the .tm text format and canonical JSON."""
from .json import JsonFileConnector
from .tm import TmFileConnector

__all__ = [
    'JsonFileConnector',
    'TmFileConnector'
]
