#!/usr/bin/env python3
"""Run the full table verification and print the report.

Usage: python scripts/run_verify.py [TABLE] [ROW]
"""

import sys
import time

from ncconic import dataset


def main() -> int:
    table = sys.argv[1] if len(sys.argv) > 1 else None
    row = sys.argv[2] if len(sys.argv) > 2 else None
    t0 = time.time()
    report = dataset.verify(table=table, row=row, out=sys.stdout)
    print(f"elapsed: {time.time() - t0:.1f}s")
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
