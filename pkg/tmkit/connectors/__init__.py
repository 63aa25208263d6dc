# tmkit/connectors/__init__.py
"""File connectors for model documents and traces."""
from .file.json import JsonFileConnector
from .file.tm import TmFileConnector

__all__ = [
    'JsonFileConnector',
    'TmFileConnector'
]
