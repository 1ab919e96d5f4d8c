"""
Configuration template for balkit.
Copy the variables you need into your shell environment; every setting in
balkit/config.py has a default, so none of these is required.
"""

import os

# Certificate cache directory (complex certificates, census, checkpoints)
# export PAPER_KIT_CACHE=/var/cache/balkit
CACHE_DIR = os.environ.get("PAPER_KIT_CACHE", "/var/cache/balkit")

# Log level for the command-line front end (DEBUG, INFO, WARNING, ERROR)
# export BALKIT_LOG_LEVEL=INFO
LOG_LEVEL = os.environ.get("BALKIT_LOG_LEVEL", "INFO")

# Node budget for searches (ear decompositions, shellings, enumeration)
# export BALKIT_NODE_BUDGET=10000000
DEFAULT_NODE_BUDGET = int(os.environ.get("BALKIT_NODE_BUDGET", "10000000"))

# Checkpoint interval for long searches, in explored nodes
# export BALKIT_CHECKPOINT_INTERVAL=1000000
CHECKPOINT_INTERVAL = int(os.environ.get("BALKIT_CHECKPOINT_INTERVAL", "1000000"))

# Worker processes for branch-parallel enumeration
# export BALKIT_JOBS=4
DEFAULT_JOBS = int(os.environ.get("BALKIT_JOBS", "4"))
