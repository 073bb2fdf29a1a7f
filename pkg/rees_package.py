#!/usr/bin/env python3
"""
reeskit CLI entry point

Usage:
    python rees_package.py package --input tests/golden/mon_example.json
    python rees_package.py ratpow --input tests/golden/mon_example.json --w 3/2 --generators
    python rees_package.py counterexample --n 1
"""

import sys
from reeskit.cli import main

if __name__ == "__main__":
    sys.exit(main())
