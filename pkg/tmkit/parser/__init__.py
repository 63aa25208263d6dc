# tmkit/parser/__init__.py
"""Text front end: the ``.tm`` grammar, its parser and the canonical writer."""
from .parser import DeclarationTransformer, TmParser, parse, parse_bytes, parse_file
from .writer import round_trip

__all__ = [
    'DeclarationTransformer',
    'TmParser',
    'parse',
    'parse_bytes',
    'parse_file',
    'round_trip',
]
