"""Linear codes over F_q and exact minimum distance by exhaustive enumeration.

The binary engine walks all 2^k messages in Gray-code order, so consecutive
codewords differ by one generator row: each step is one packed XOR per
64-bit word plus a population count.  The message space is cut into
contiguous Gray ranges so workers can scan independently; each range is
seeded with the codeword at its first index.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from numba import njit

from .errors import BudgetExceeded, DimensionMismatch, ParseError

#: Largest binary dimension the exhaustive engine accepts.
MAX_BINARY_K = 34
#: Largest message count the q-ary engine accepts.
MAX_QARY_MESSAGES = 1 << 24
#: Largest message count the naive oracle accepts.
MAX_ORACLE_MESSAGES = 1 << 20


def rank_and_reduce(G, q: int = 2) -> tuple[int, np.ndarray, list[int]]:
    """Gaussian elimination over F_q with leftmost pivots.

    Returns ``(rank, R, pivots)`` where ``R`` holds the ``rank`` nonzero rows
    of the reduced row-echelon form.
    """
    M = np.array(G, dtype=np.int64, copy=True) % q
    if M.ndim != 2:
        raise DimensionMismatch("generator matrix must be 2-dimensional")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        if q != 2 and M[r, c] != 1:
            M[r] = (M[r] * pow(int(M[r, c]), -1, q)) % q
        mask = M[:, c] != 0
        mask[r] = False
        if mask.any():
            if q == 2:
                M[mask] ^= M[r]
            else:
                M[mask] = (M[mask] - M[mask, c:c + 1] * M[r]) % q
        pivots.append(c)
        r += 1
    return r, M[:r].astype(np.uint8), pivots


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Linear [n, k] code over F_q given by a full-rank k x n generator matrix."""

    G: np.ndarray
    q: int = 2

    def __post_init__(self) -> None:
        G = np.asarray(self.G)
        if G.ndim != 2:
            raise DimensionMismatch("generator matrix must be 2-dimensional")
        if G.size and (G.min() < 0 or G.max() >= self.q):
            raise ValueError(f"generator entries must lie in [0, {self.q})")
        G = G.astype(np.uint8)
        G.setflags(write=False)
        object.__setattr__(self, "G", G)
        rank = rank_and_reduce(G, self.q)[0]
        if rank != G.shape[0]:
            raise DimensionMismatch(f"generator rows are dependent (rank {rank} < {G.shape[0]})")

    @classmethod
    def span(cls, rows, q: int = 2, n: int | None = None) -> "LinearCode":
        """Code spanned by ``rows``; dependent rows are replaced by an echelon basis."""
        M = np.asarray(rows, dtype=np.int64)
        if M.size == 0:
            M = np.zeros((0, n or 0), dtype=np.int64)
        M %= q
        rank, R, _ = rank_and_reduce(M, q)
        return cls(M if rank == M.shape[0] else R, q)

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @cached_property
    def packed(self) -> np.ndarray:
        """Binary rows as uint64 words; column j is bit j % 64 of word j // 64."""
        if self.q != 2:
            raise ValueError("packed rows only exist for q=2")
        return pack_rows(self.G)

    def encode(self, message) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64)
        if msg.shape != (self.k,):
            raise DimensionMismatch(f"message length {msg.shape} != k={self.k}")
        return ((msg @ self.G.astype(np.int64)) % self.q).astype(np.uint8)

    def contains(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64).reshape(1, -1)
        if w.shape[1] != self.n:
            return False
        return rank_and_reduce(np.vstack([self.G, w]), self.q)[0] == self.k

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.k}, q={self.q})"


def pack_rows(G) -> np.ndarray:
    G = np.asarray(G, dtype=np.uint8)
    k, n = G.shape
    words = max(1, (n + 63) // 64)
    padded = np.zeros((k, words * 64), dtype=np.uint8)
    padded[:, :n] = G
    bits = padded.reshape(k, words, 64).astype(np.uint64)
    shifts = np.arange(64, dtype=np.uint64)
    return np.ascontiguousarray((bits << shifts).sum(axis=2, dtype=np.uint64))


def unpack_row(words: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(len(words) * 64, dtype=np.uint8)
    for w, val in enumerate(words):
        val = int(val)
        for b in range(64):
            out[w * 64 + b] = (val >> b) & 1
    return out[:n]


# -- numba kernels ------------------------------------------------------------


@njit(inline="always")
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(nogil=True, cache=True)
def _seed(rows, index, cw):
    k, W = rows.shape
    g = index ^ (index >> 1)
    for w in range(W):
        cw[w] = 0
    for b in range(k):
        if (g >> b) & 1:
            for w in range(W):
                cw[w] ^= rows[b, w]


@njit(nogil=True, cache=True)
def _gray_scan(rows, lo, hi):
    """Min weight, first index attaining it, and its multiplicity over [lo, hi)."""
    W = rows.shape[1]
    cw = np.zeros(W, np.uint64)
    _seed(rows, lo, cw)
    best = 1 << 40
    first = -1
    count = 0
    if lo > 0:
        wt = 0
        for w in range(W):
            wt += _popcount64(cw[w])
        best, first, count = wt, lo, 1
    for i in range(lo + 1, hi):
        b = 0
        t = i
        while (t & 1) == 0:
            t >>= 1
            b += 1
        wt = 0
        for w in range(W):
            cw[w] ^= rows[b, w]
            wt += _popcount64(cw[w])
        if wt <= best:
            if wt < best:
                best = wt
                first = i
                count = 1
            else:
                count += 1
    return best, first, count


@njit(nogil=True, cache=True)
def _gray_collect(rows, lo, hi, target, out):
    """Write Gray messages of weight ``target`` in [lo, hi) into ``out``."""
    W = rows.shape[1]
    cw = np.zeros(W, np.uint64)
    _seed(rows, lo, cw)
    n = 0
    if lo > 0:
        wt = 0
        for w in range(W):
            wt += _popcount64(cw[w])
        if wt == target:
            out[n] = lo ^ (lo >> 1)
            n += 1
    for i in range(lo + 1, hi):
        b = 0
        t = i
        while (t & 1) == 0:
            t >>= 1
            b += 1
        wt = 0
        for w in range(W):
            cw[w] ^= rows[b, w]
            wt += _popcount64(cw[w])
        if wt == target and n < out.shape[0]:
            out[n] = i ^ (i >> 1)
            n += 1
    return n


# -- engines --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistanceReport:
    d: int
    witness: np.ndarray
    message: np.ndarray
    messages_enumerated: int
    engine: str
    count: int | None = None  # number of weight-d codewords, when the engine tracks it


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _default_workers() -> int:
    return os.cpu_count() or 1


def _scan_binary(rows: np.ndarray, k: int, workers: int) -> tuple[int, int, int]:
    ranges = _ranges(1 << k, workers)
    if len(ranges) == 1:
        results = [_gray_scan(rows, *ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            results = list(pool.map(lambda r: _gray_scan(rows, *r), ranges))
    best = min(r[0] for r in results)
    first = next(r[1] for r in results if r[0] == best)
    count = sum(r[2] for r in results if r[0] == best)
    return int(best), int(first), int(count)


def _gray_message(index: int, k: int) -> np.ndarray:
    g = index ^ (index >> 1)
    return np.array([(g >> b) & 1 for b in range(k)], dtype=np.uint8)


def min_distance_exhaustive(code: LinearCode, workers: int | None = None) -> DistanceReport:
    """Exact minimum distance over all nonzero messages.

    The witness is the first weight-d codeword in engine order, so the report
    does not depend on ``workers``.
    """
    if code.k == 0:
        raise BudgetExceeded("the zero code has no nonzero codewords")
    workers = workers or _default_workers()
    if code.q == 2:
        if code.k > MAX_BINARY_K:
            raise BudgetExceeded(f"k={code.k} exceeds the binary guard of {MAX_BINARY_K}")
        best, first, count = _scan_binary(code.packed, code.k, workers)
        msg = _gray_message(first, code.k)
        return DistanceReport(best, code.encode(msg), msg, (1 << code.k) - 1, "gray-f2", count)
    return _exhaustive_qary(code)


def _all_combinations(rows: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """All F_q combinations of ``rows`` (lexicographic, last row fastest)."""
    k, n = rows.shape
    msgs = np.zeros((1, k), dtype=np.int64)
    words = np.zeros((1, n), dtype=np.int64)
    for i in range(k):
        coefs = np.arange(q, dtype=np.int64)
        words = ((words[:, None, :] + coefs[None, :, None] * rows[i][None, None, :]) % q).reshape(-1, n)
        m2 = np.repeat(msgs, q, axis=0)
        m2[:, i] = np.tile(coefs, msgs.shape[0])
        msgs = m2
    return msgs, words


def _exhaustive_qary(code: LinearCode) -> DistanceReport:
    q, k = code.q, code.k
    total = q ** k
    if total > MAX_QARY_MESSAGES:
        raise BudgetExceeded(f"q^k = {q}^{k} exceeds the q-ary cap {MAX_QARY_MESSAGES}")
    G = code.G.astype(np.int64)
    k_lo = min(k, 10)
    lo_msgs, lo_words = _all_combinations(G[k - k_lo:], q)
    hi_msgs, hi_words = _all_combinations(G[:k - k_lo], q)
    best, witness, message, count = None, None, None, 0
    for hm, hw in zip(hi_msgs, hi_words):
        wts = np.count_nonzero((lo_words + hw) % q, axis=1)
        if not hm.any():
            wts[0] = code.n + 1
        w = int(wts.min())
        if best is None or w < best:
            j = int(np.argmax(wts == w))
            best, count = w, int((wts == w).sum())
            message = np.concatenate([hm, lo_msgs[j]]).astype(np.uint8)
            witness = code.encode(message)
        elif w == best:
            count += int((wts == w).sum())
    return DistanceReport(best, witness, message, total - 1, "lex-fq", count)


def min_distance_oracle(code: LinearCode) -> int:
    """Reference minimum distance: multiply every message by G directly."""
    q, k = code.q, code.k
    if k == 0:
        raise BudgetExceeded("the zero code has no nonzero codewords")
    if q ** k > MAX_ORACLE_MESSAGES:
        raise BudgetExceeded(f"q^k = {q}^{k} exceeds the oracle cap")
    G = code.G.astype(np.int64)
    best = code.n + 1
    it = itertools.product(range(q), repeat=k)
    next(it)  # zero message
    while True:
        batch = list(itertools.islice(it, 4096))
        if not batch:
            return best
        words = (np.array(batch, dtype=np.int64) @ G) % q
        best = min(best, int(np.count_nonzero(words, axis=1).min()))


def min_weight_messages(code: LinearCode, workers: int | None = None) -> tuple[int, np.ndarray]:
    """Exact d and every message (one row each) whose codeword has weight d."""
    if code.k == 0:
        raise BudgetExceeded("the zero code has no nonzero codewords")
    if code.q != 2:
        return _min_weight_messages_qary(code)
    if code.k > MAX_BINARY_K:
        raise BudgetExceeded(f"k={code.k} exceeds the binary guard of {MAX_BINARY_K}")
    rows, k = code.packed, code.k
    d, _, count = _scan_binary(rows, k, workers or _default_workers())
    out = np.zeros(count, dtype=np.int64)
    got = _gray_collect(rows, 0, 1 << k, d, out)
    if got != count:
        raise RuntimeError("Gray collection disagrees with the scan")  # unreachable
    out.sort()
    msgs = ((out[:, None] >> np.arange(k)) & 1).astype(np.uint8)
    return d, msgs


def _min_weight_messages_qary(code: LinearCode) -> tuple[int, np.ndarray]:
    q, k = code.q, code.k
    if q ** k > MAX_QARY_MESSAGES:
        raise BudgetExceeded(f"q^k = {q}^{k} exceeds the q-ary cap {MAX_QARY_MESSAGES}")
    msgs, words = _all_combinations(code.G.astype(np.int64), q)
    wts = np.count_nonzero(words, axis=1)
    wts[0] = code.n + 1
    d = int(wts.min())
    return d, msgs[wts == d].astype(np.uint8)


# -- generator-matrix files -------------------------------------------------------


def format_generator_matrix(code: LinearCode) -> str:
    if code.q > 10:
        raise ValueError("the generator-matrix file stores one digit per symbol (q <= 10)")
    lines = [f"{code.q} {code.n} {code.k}"]
    lines += ["".join(str(int(v)) for v in row) for row in code.G]
    return "\n".join(lines) + "\n"


def write_generator_matrix(code: LinearCode, path: str | Path) -> None:
    Path(path).write_text(format_generator_matrix(code))


def parse_generator_matrix(text: str) -> LinearCode:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty generator-matrix file")
    try:
        q, n, k = (int(t) for t in lines[0].split())
    except ValueError as e:
        raise ParseError(f"line 1: expected 'q n k', got {lines[0]!r}") from e
    if len(lines) - 1 != k:
        raise ParseError(f"header declares k={k} rows, found {len(lines) - 1}")
    G = np.zeros((k, n), dtype=np.uint8)
    for i, ln in enumerate(lines[1:]):
        if len(ln) != n or not ln.isdigit():
            raise ParseError(f"line {i + 2}: expected {n} digits")
        vals = np.frombuffer(ln.encode(), dtype=np.uint8) - ord("0")
        if vals.max(initial=0) >= q:
            raise ParseError(f"line {i + 2}: symbol out of range for q={q}")
        G[i] = vals
    return LinearCode(G, q)


def read_generator_matrix(path: str | Path) -> LinearCode:
    return parse_generator_matrix(Path(path).read_text())
