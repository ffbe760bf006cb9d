"""Sifted search over short odd lengths, writing a JSON-lines ledger.

Lengths this small have no entries in the bundled best-known table, so
records come back as "unlisted" unless --best-known supplies rows.

    python scripts/run_small_search.py --m-range 15..21 --g-strategy degree:4 --ledger out.jsonl
"""

import argparse
import collections
import logging
import sys

from mpucodes.search import (GStrategy, SearchConfig, bundled_best_known, load_best_known,
                             read_ledger, run_search)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-range", default="7..21")
    ap.add_argument("--g-strategy", default="degree:3")
    ap.add_argument("--quantifier", default="all-minwords", choices=["all-minwords", "some-minword"])
    ap.add_argument("--max-k", type=int, default=20)
    ap.add_argument("--best-known", default=None)
    ap.add_argument("--ledger", default="small_search.jsonl")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    lo, _, hi = args.m_range.partition("..")
    config = SearchConfig(m_range=(int(lo), int(hi or lo)), g_strategy=GStrategy.parse(args.g_strategy),
                          max_k_enum=args.max_k, quantifier=args.quantifier, seed=args.seed)
    best = load_best_known(args.best_known) if args.best_known else bundled_best_known()
    new = run_search(config, best, args.ledger)
    records = read_ledger(args.ledger)
    by_params = collections.defaultdict(list)
    for r in records:
        by_params[(r.n, r.k)].append(r.d_exact)
    print(f"{len(new)} new records, {len(records)} in {args.ledger}")
    print(f"{'n':>4}{'k':>4}{'best d':>8}{'dstar<d count':>15}")
    for (n, k), ds in sorted(by_params.items()):
        known = [d for d in ds if d is not None]
        best_d = max(known) if known else "?"
        sharp = sum(1 for r in records if (r.n, r.k) == (n, k) and r.d_exact is not None
                    and r.dstar < r.d_exact)
        print(f"{n:>4}{k:>4}{best_d!s:>8}{sharp:>15}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
