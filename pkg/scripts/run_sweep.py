"""Run the full exhaustive check (A up to rank 6, B/C/D up to rank 5) and print one line per family.

    python3 scripts/run_sweep.py [--workers N] [--findings DIR]

Exits nonzero if any cell produced a finding.
"""

import argparse
import sys
import time
from pathlib import Path

from parablocks.sweep import run_sweep, write_findings

RANGES = {"A": 6, "B": 5, "C": 5, "D": 5}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--workers", type=int, default=None, help="process pool size; 1 runs in-process")
    parser.add_argument("--findings", type=Path, help="directory for <family>.jsonl findings files")
    parser.add_argument("--families", default="ABCD")
    args = parser.parse_args()

    start = time.perf_counter()
    total = 0
    for family in args.families:
        summary = run_sweep(family, RANGES[family], workers=args.workers)
        total += len(summary.findings)
        print(summary, flush=True)
        if args.findings:
            args.findings.mkdir(parents=True, exist_ok=True)
            write_findings(str(args.findings / f"{family}.jsonl"), summary.findings)
    print(f"total: {total} findings in {time.perf_counter() - start:.0f}s")
    return 1 if total else 0


if __name__ == "__main__":
    sys.exit(main())
