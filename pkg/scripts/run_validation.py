#!/usr/bin/env python3
"""Run the analytic-vs-oracle validation battery and print the result table.

Usage:
    python scripts/run_validation.py [--mc-samples N] [--seed S] [--workers W]

Exit code 0 when every check passes, 2 otherwise.
"""

import argparse
import sys

from fdrelay.cli import main as cli_main


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mc-samples", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=12345)
    parser.add_argument("--workers", type=int, default=4)
    args = parser.parse_args(argv)
    return cli_main([
        "validate",
        "--mc-samples", str(args.mc_samples),
        "--seed", str(args.seed),
        "--workers", str(args.workers),
    ])


if __name__ == "__main__":
    sys.exit(run())
