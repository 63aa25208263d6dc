# tmkit/validators/__init__.py
"""Static checks over a validated model."""
from .aggregation import behavioral_aggregation, deletion_impact
from .encapsulation import (
    Classification,
    EncapsulationValidator,
    Verdict,
    bypass_edges,
    check_oo_encapsulation,
    classification_frame,
    classify,
)
from .flows import LEGAL_INTER_PAIRS, LEGAL_INTRA_PAIRS, FlowLegalityValidator, check_flow_legality, is_legal_flow

__all__ = [
    'behavioral_aggregation',
    'deletion_impact',
    'Classification',
    'EncapsulationValidator',
    'Verdict',
    'bypass_edges',
    'check_oo_encapsulation',
    'classification_frame',
    'classify',
    'LEGAL_INTER_PAIRS',
    'LEGAL_INTRA_PAIRS',
    'FlowLegalityValidator',
    'check_flow_legality',
    'is_legal_flow',
]
