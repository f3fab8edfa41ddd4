"""CLI wrapper module for Geodesic Planner."""

import sys

from .__main__ import main

if __name__ == "__main__":
    sys.exit(main())
