"""Regenerate the witness table, the c=93 per-index table and the c-scan as CSV files.

    python scripts/reproduce.py [--out repro] [--jobs 4] [--effort quick]
"""

import sys

from supernatural.cli import main

if __name__ == "__main__":
    sys.exit(main(["repro-paper", *sys.argv[1:]]))
