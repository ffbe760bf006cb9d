"""Rebuild the seven record codes from the bundled specs and check their parameters.

    python scripts/reproduce_paper.py [--workers W]
"""

import argparse
import sys
import time

from mpucodes.cli import verify_paper


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    t0 = time.perf_counter()
    ok = verify_paper(args.workers)
    print(f"total {time.perf_counter() - t0:.1f}s: {'all claims reproduced' if ok else 'MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
