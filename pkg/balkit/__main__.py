"""
Entry point for `python -m balkit`.
"""

import sys

from balkit.cli import main

if __name__ == "__main__":
    sys.exit(main())
