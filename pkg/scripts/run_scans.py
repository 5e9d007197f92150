#!/usr/bin/env python3
"""Run the three standard scans and write their certificates under runs/.

    python scripts/run_scans.py            # survey k <= 150, Hadamard v <= 10000, PPC n <= 20000
    python scripts/run_scans.py --jobs 4 --audit

Each scan is the corresponding ``diffsets`` subcommand; re-running resumes
from the journals in runs/.
"""

import argparse
import sys
import time

from diffsets.cli import main as cli

SCANS = {
    "survey": ["survey", "--kmin", "2", "--kmax", "150"],
    "hadamard": ["hadamard", "--vmax", "10000"],
    "ppc": ["ppc", "--nmin", "2", "--nmax", "20000"],
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="runs")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--audit", action="store_true", help="re-verify every exclusion witness")
    ap.add_argument("--only", choices=sorted(SCANS), action="append")
    args = ap.parse_args()
    worst = 0
    for name in args.only or SCANS:
        argv = SCANS[name] + ["--out", f"{args.out_dir}/{name}", "--jobs", str(args.jobs), "--format", "jsonl"]
        if args.audit:
            argv.append("--audit")
        t0 = time.perf_counter()
        # stdout carries the JSONL; keep the progress lines on stderr
        rc = cli(argv)
        print(f"{name}: exit {rc}, {time.perf_counter() - t0:.0f}s -> {args.out_dir}/{name}.md", file=sys.stderr)
        worst = max(worst, rc)
    return worst


if __name__ == "__main__":
    sys.exit(main())
