"""Puncture, shorten, extend and row-space equality.

Positions are 1-based at this surface.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, Unsupported
from .mindist import LinearCode, rank_and_reduce


def _index(code: LinearCode, pos: int) -> int:
    if not 1 <= pos <= code.n:
        raise IndexError(f"position {pos} outside 1..{code.n}")
    return pos - 1


def puncture(code: LinearCode, pos: int) -> LinearCode:
    """Delete coordinate ``pos`` from every codeword."""
    j = _index(code, pos)
    return LinearCode.span(np.delete(code.G, j, axis=1), code.q, n=code.n - 1)


def shorten(code: LinearCode, pos: int) -> LinearCode:
    """Keep the codewords vanishing at ``pos``, then delete that coordinate."""
    j = _index(code, pos)
    q = code.q
    G = code.G.astype(np.int64)
    nz = np.flatnonzero(G[:, j])
    if nz.size:
        p = int(nz[0])
        pivot = (G[p] * pow(int(G[p, j]), -1, q)) % q
        G = np.delete(G, p, axis=0)
        G = (G - G[:, j:j + 1] * pivot) % q
    return LinearCode.span(np.delete(G, j, axis=1), q, n=code.n - 1)


def extend(code: LinearCode) -> LinearCode:
    """Append an overall parity coordinate at position n + 1."""
    if code.q != 2:
        raise Unsupported("extend is only defined here for binary codes")
    parity = code.G.sum(axis=1, dtype=np.int64) % 2
    return LinearCode(np.hstack([code.G, parity[:, None].astype(np.uint8)]), 2)


def same_code(a: LinearCode, b: LinearCode) -> bool:
    """Row-space equality via reduced echelon forms."""
    if a.q != b.q or a.n != b.n:
        raise DimensionMismatch(f"cannot compare [{a.n}] over F_{a.q} with [{b.n}] over F_{b.q}")
    if a.k != b.k:
        return False
    return np.array_equal(rank_and_reduce(a.G, a.q)[1], rank_and_reduce(b.G, b.q)[1])


def is_subcode(a: LinearCode, b: LinearCode) -> bool:
    """True iff every row of ``a`` lies in the row space of ``b``."""
    if a.q != b.q or a.n != b.n:
        raise DimensionMismatch("codes differ in length or field")
    return rank_and_reduce(np.vstack([b.G, a.G]), b.q)[0] == b.k
