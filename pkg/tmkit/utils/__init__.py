# tmkit/utils/__init__.py
"""Package defaults."""
from . import config

__all__ = ['config']
