# tmkit/monitoring/__init__.py
"""Conservation reporting, run timing and CLI logging."""
from .logging import configure_logging
from .metrics import ConservationReport, ResourceMonitor, conservation_check

__all__ = ['ConservationReport', 'ResourceMonitor', 'conservation_check', 'configure_logging']
