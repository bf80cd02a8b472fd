#!/usr/bin/env python3
"""
Dependence Logic Workbench - Main Entry Point
"""
import os
import signal
import sys

# Make the root modules importable when launched from another directory.
script_dir = os.path.dirname(os.path.abspath(__file__))
if script_dir not in sys.path:
    sys.path.insert(0, script_dir)

import cli


def _shutdown(signum, _frame):
    """Called on SIGTERM or SIGINT; long scans stop without a traceback."""
    print(f"⚠️ [Main] Stopped by signal {signum}", file=sys.stderr)
    sys.exit(128 + signum)


def main():
    signal.signal(signal.SIGTERM, _shutdown)
    signal.signal(signal.SIGINT, _shutdown)
    sys.exit(cli.run(sys.argv[1:]))


if __name__ == "__main__":
    main()
