# tmkit/utils/config.py
"""Package-wide defaults."""
from ..core.types import Mode

DEFAULT_MODE = Mode.RELAXED
MODE_ENV_VAR = "TMKIT_MODE"

# Deepest thimac nesting the parser accepts before reporting NESTING_TOO_DEEP.
MAX_NESTING_DEPTH = 128

SCHEMA_VERSION = 1
SCHEMA_VERSION_KEY = "tmkit_version"

# Seconds a CLI command may take before ResourceMonitor logs a warning.
TIME_BUDGET_SECONDS = 1.0
