#!/usr/bin/env python3
"""
Monova command line entry point
"""

import sys
from pathlib import Path

# Add backend to path
sys.path.insert(0, str(Path(__file__).parent.parent / "backend"))

from monova_cli import main

if __name__ == "__main__":
    sys.exit(main())
