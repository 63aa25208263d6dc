# tmkit/pipeline/__init__.py
"""Pipeline components for chaining model checks."""
from .builder import CheckPipeline, CheckPipelineBuilder, check_document, default_pipeline

__all__ = ['CheckPipeline', 'CheckPipelineBuilder', 'check_document', 'default_pipeline']
