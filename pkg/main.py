#!/usr/bin/env python3
"""
codedensity - Main Application
Density bounds and oracles for block codes and subspace codes
"""

import sys
from pathlib import Path

# Make the src package importable when run from anywhere
sys.path.insert(0, str(Path(__file__).parent))

from src.cli.app import main


if __name__ == "__main__":
    sys.exit(main())
