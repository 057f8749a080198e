#!/usr/bin/env python3
"""Regenerate the CSV data behind every result figure (2 through 9).

Usage:
    python scripts/make_figures.py [outdir] [--mode analytic|mc|both] [--workers N]

Each figure lands in <outdir>/fig<N>.csv. Analytic-only by default; pass
--mode both to add Monte Carlo columns where the figure defines them.
"""

import argparse
import sys
from pathlib import Path

from fdrelay.cli import main as cli_main


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="figures")
    parser.add_argument("--mode", choices=("analytic", "mc", "both"),
                        default="analytic")
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--seed", type=int, default=12345)
    parser.add_argument("--mc-samples", type=int, default=1_000_000)
    args = parser.parse_args(argv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for n in range(2, 10):
        out = outdir / f"fig{n}.csv"
        code = cli_main([
            "figure", str(n),
            "--mode", args.mode,
            "--workers", str(args.workers),
            "--seed", str(args.seed),
            "--mc-samples", str(args.mc_samples),
            "--output", str(out),
        ])
        if code != 0:
            print(f"figure {n} failed with exit code {code}", file=sys.stderr)
            return code
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
