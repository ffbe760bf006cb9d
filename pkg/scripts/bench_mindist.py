"""Time the exhaustive minimum-distance engine on random binary codes.

    python scripts/bench_mindist.py --n 100 --k 20 22 24 26 --workers 1 2 4
"""

import argparse
import os
import time

import numpy as np

from mpucodes.mindist import LinearCode, min_distance_exhaustive


def random_full_rank(rng, n, k):
    G = np.hstack([np.eye(k, dtype=np.uint8), rng.integers(0, 2, (k, n - k), dtype=np.uint8)])
    return LinearCode(G)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--k", type=int, nargs="+", default=[18, 20, 22, 24])
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"cpus available: {os.cpu_count()}")
    rng = np.random.default_rng(args.seed)
    min_distance_exhaustive(random_full_rank(rng, 16, 4))  # compile kernels
    print(f"{'k':>4}{'workers':>9}{'d':>5}{'seconds':>10}{'Mmsg/s':>9}")
    for k in args.k:
        code = random_full_rank(rng, args.n, k)
        for w in args.workers:
            t0 = time.perf_counter()
            rep = min_distance_exhaustive(code, workers=w)
            dt = time.perf_counter() - t0
            print(f"{k:>4}{w:>9}{rep.d:>5}{dt:>10.2f}{rep.messages_enumerated / dt / 1e6:>9.1f}")


if __name__ == "__main__":
    main()
