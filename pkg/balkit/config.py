"""
Configuration settings for balkit.
Loads overridable values from environment variables.
"""

import os

# Application Settings
APP_NAME = "balkit"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = "Balanced neighborly spheres and manifolds toolkit"

# Report schema version (bumped whenever RunReport changes shape)
REPORT_SCHEMA_VERSION = "1"

# Certificate Cache
# Holds search-backed certificates, census results and search checkpoints
CACHE_DIR = os.environ.get(
    "PAPER_KIT_CACHE",
    os.path.join(os.path.expanduser("~"), ".cache", "balkit")
)

# Logging
LOG_LEVEL = os.environ.get("BALKIT_LOG_LEVEL", "WARNING").upper()

# Search Budgets (explored nodes, not wall time)
DEFAULT_NODE_BUDGET = int(os.environ.get("BALKIT_NODE_BUDGET", "10000000"))
CHECKPOINT_INTERVAL = int(os.environ.get("BALKIT_CHECKPOINT_INTERVAL", "1000000"))

# Worker Parallelism
DEFAULT_JOBS = int(os.environ.get("BALKIT_JOBS", "1"))

# Complex Size Limits
MAX_VERTICES = 64
ENUMERATION_VERTEX_CEILING = 16  # d * max(n_i) for exhaustive enumeration

# Default vertex label letters, one per color class
COLOR_LETTERS = "uvwzabcdefgh"
