"""Matrix-product codes with polynomial units.

Given cyclic codes C_1..C_s of length m and an s x l matrix A over
F_q[x]/(x^m - 1), the code [C_1 ... C_s] . A consists of the vectors
(sum_i a_{i,1} c_i, ..., sum_i a_{i,l} c_i).  Block j of a codeword occupies
symbols j*m .. (j+1)*m - 1.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .cyclic import DEFAULT_ENUM_CAP, CyclicCode, is_nested, make_cyclic, min_weight_words
from .errors import (DimensionMismatch, MissingWordCache, NotADivisor, NotAUnit, ParseError,
                     RankDefect, Unsupported)
from .mindist import LinearCode, rank_and_reduce
from .ringcore import Poly, RingElement, is_unit, parse_poly, ring_inverse

#: Default budget for brute-force block-weight computation over the ring.
DEFAULT_BLOCKWEIGHT_CAP = 1 << 20

Entry = RingElement | Poly | str | int


def _as_ring(value: Entry, m: int, q: int) -> RingElement:
    if isinstance(value, RingElement):
        return value
    if isinstance(value, Poly):
        return RingElement(value, m)
    if isinstance(value, int):
        return RingElement(Poly.constant(value, q), m)
    return RingElement(parse_poly(value, q), m)


@dataclass(frozen=True)
class UnitMatrix:
    """s x l matrix over F_q[x]/(x^m - 1); row i is R_{i+1}."""

    entries: tuple[tuple[RingElement, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix")
        if len(rows) > len(rows[0]):
            raise DimensionMismatch(f"need s <= l, got {len(rows)} x {len(rows[0])}")
        m, q = rows[0][0].m, rows[0][0].q
        if any(e.m != m or e.q != q for r in rows for e in r):
            raise DimensionMismatch("all entries must share (m, q)")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Entry]], m: int, q: int = 2) -> "UnitMatrix":
        return cls(tuple(tuple(_as_ring(v, m, q) for v in r) for r in rows))

    @property
    def s(self) -> int:
        return len(self.entries)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.entries[0])

    @property
    def m(self) -> int:
        return self.entries[0][0].m

    @property
    def q(self) -> int:
        return self.entries[0][0].q

    def row(self, i: int) -> tuple[RingElement, ...]:
        return self.entries[i]

    def __getitem__(self, ij: tuple[int, int]) -> RingElement:
        i, j = ij
        return self.entries[i][j]

    def is_constant(self) -> bool:
        return all(e.is_constant() for r in self.entries for e in r)


def plotkin_matrix(g: Entry, m: int, q: int = 2) -> UnitMatrix:
    """The search shape ((1, g), (0, 1))."""
    return UnitMatrix.of([[1, g], [0, 1]], m, q)


def is_canonical(A: UnitMatrix) -> bool:
    """Shape ((g1, g2), (0, g4)) with g1, g2, g4 units."""
    return (A.s == 2 and A.l == 2 and A[1, 0].is_zero()
            and is_unit(A[0, 0]) and is_unit(A[0, 1]) and is_unit(A[1, 1]))


# -- full rank ---------------------------------------------------------------------


class Certificate(enum.Enum):
    HOLDS = "holds"
    UNKNOWN = "unknown"


def determinant(M: Sequence[Sequence[RingElement]]) -> RingElement:
    """Laplace expansion along the first row (commutative ring)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = RingElement.zero(M[0][0].m, M[0][0].q)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(minor)
        total = total - term if j % 2 else total + term
    return total


def full_rank_certificate(A: UnitMatrix) -> Certificate:
    """HOLDS when some s x s minor has unit determinant."""
    s, l = A.s, A.l
    if s == l and all(A[i, j].is_zero() for i in range(s) for j in range(i)):
        if all(is_unit(A[i, i]) for i in range(s)):
            return Certificate.HOLDS
    for cols in itertools.combinations(range(l), s):
        minor = [[A[i, j] for j in cols] for i in range(s)]
        if is_unit(determinant(minor)):
            return Certificate.HOLDS
    return Certificate.UNKNOWN


# -- construction --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MPCode:
    constituents: tuple[CyclicCode, ...]
    matrix: UnitMatrix
    code: LinearCode
    certificate: Certificate
    dstar: int | None = field(default=None)

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k


def _check_shapes(codes: Sequence[CyclicCode], A: UnitMatrix) -> None:
    if len(codes) != A.s:
        raise DimensionMismatch(f"{len(codes)} constituent codes for a matrix with s={A.s}")
    for c in codes:
        if c.m != A.m or c.q != A.q:
            raise DimensionMismatch(f"constituent {c} does not match (m={A.m}, q={A.q})")


def generator_rows(codes: Sequence[CyclicCode], A: UnitMatrix) -> np.ndarray:
    """Block row i holds x^t a_{i,j} f_i for t < k_i, laid across the l blocks."""
    _check_shapes(codes, A)
    rows = []
    for i, c in enumerate(codes):
        base = [A[i, j] * RingElement(c.f, c.m) for j in range(A.l)]
        for t in range(c.k):
            rows.append([v for b in base for v in b.shift(t).vector()])
    return np.array(rows, dtype=np.uint8).reshape(len(rows), A.l * A.m)


def build_mp(codes: Sequence[CyclicCode], A: UnitMatrix) -> MPCode:
    codes = tuple(codes)
    G = generator_rows(codes, A)
    cert = full_rank_certificate(A)
    expected = sum(c.k for c in codes)
    rank = rank_and_reduce(G, A.q)[0]
    if cert is Certificate.HOLDS and rank != expected:
        raise RankDefect(f"rank {rank} != sum k_i = {expected} despite a unit minor")
    return MPCode(codes, A, LinearCode.span(G, A.q, n=A.l * A.m), cert)


def encode(messages: Sequence[Poly], A: UnitMatrix, codes: Sequence[CyclicCode]) -> np.ndarray:
    """Codeword whose block j is sum_i a_{i,j} f_i h_i."""
    _check_shapes(codes, A)
    if len(messages) != A.s:
        raise DimensionMismatch(f"expected {A.s} messages")
    cs = []
    for h, c in zip(messages, codes):
        if h.degree >= c.k:
            raise DimensionMismatch(f"message degree {h.degree} >= k = {c.k}")
        cs.append(c.codeword(h))
    out = []
    for j in range(A.l):
        block = RingElement.zero(A.m, A.q)
        for i, ci in enumerate(cs):
            block = block + A[i, j] * ci
        out.extend(block.vector())
    return np.array(out, dtype=np.uint8)


# -- the d* bound --------------------------------------------------------------------


def _block_weight(vec: Sequence[RingElement]) -> int:
    return sum(1 for e in vec if not e.is_zero())


def row_module_min_blockweight(A: UnitMatrix, i: int, cap: int = DEFAULT_BLOCKWEIGHT_CAP,
                               method: str = "auto") -> int:
    """D_i: least number of nonzero coordinates of a nonzero word in <R_1..R_i>.

    ``method`` is ``"constant"`` (F_q-span of constant rows), ``"canonical"``
    (((g1, g2), (0, g4)) with units), ``"brute"`` (all ring coefficient
    tuples, at most ``cap`` of them) or ``"auto"`` to pick the first that
    applies in that order.
    """
    if not 1 <= i <= A.s:
        raise IndexError(f"row count {i} outside 1..{A.s}")
    q, m = A.q, A.m
    if method == "auto":
        if A.is_constant():
            method = "constant"
        elif is_canonical(A):
            method = "canonical"
        else:
            method = "brute"

    if method == "canonical":
        if not is_canonical(A):
            raise Unsupported("matrix is not of the shape ((g1, g2), (0, g4)) with units")
        return 2 if i == 1 else 1

    if method == "constant":
        if not A.is_constant():
            raise Unsupported("matrix has non-constant entries")
        R = np.array([[e.poly.coeff(0) for e in A.row(r)] for r in range(i)], dtype=np.int64)
        best = None
        for coefs in itertools.product(range(q), repeat=i):
            w = int(np.count_nonzero((np.array(coefs) @ R) % q))
            if w and (best is None or w < best):
                best = w
        if best is None:
            raise ValueError("rows span the zero module")
        return best

    if method == "brute":
        if q ** (i * m) > cap:
            raise Unsupported(f"brute force needs q^(i*m) = {q}^{i * m} tuples, cap is {cap}")
        elems = [RingElement(p, m) for p in _all_polys(m, q)]
        best = None
        for rs in itertools.product(elems, repeat=i):
            word = [RingElement.zero(m, q)] * A.l
            for r, k in zip(rs, range(i)):
                if not r.is_zero():
                    word = [w + r * a for w, a in zip(word, A.row(k))]
            w = _block_weight(word)
            if w and (best is None or w < best):
                best = w
        if best is None:
            raise ValueError("rows span the zero module")
        return best

    raise Unsupported(f"unknown method {method!r}")


def _all_polys(m: int, q: int) -> list[Poly]:
    if q == 2:
        return [Poly.from_bits(b) for b in range(1 << m)]
    return [Poly(c, q) for c in itertools.product(range(q), repeat=m)]


def _min_distance_of(c: CyclicCode, enum_cap: int) -> int:
    if c.min_weight is not None:
        return c.min_weight
    return min_weight_words(c, enum_cap)[0]


def bound_terms(codes: Sequence[CyclicCode], A: UnitMatrix, enum_cap: int = DEFAULT_ENUM_CAP,
                cap: int = DEFAULT_BLOCKWEIGHT_CAP) -> list[tuple[int, int]]:
    """Pairs (d_i, D_i) for i = 1..s."""
    _check_shapes(codes, A)
    return [(_min_distance_of(c, enum_cap), row_module_min_blockweight(A, i + 1, cap))
            for i, c in enumerate(codes)]


def dstar(codes: Sequence[CyclicCode], A: UnitMatrix, enum_cap: int = DEFAULT_ENUM_CAP,
          cap: int = DEFAULT_BLOCKWEIGHT_CAP) -> int:
    """min_i d_i D_i, a lower bound on the minimum distance when A has full rank."""
    return min(d * D for d, D in bound_terms(codes, A, enum_cap, cap))


# -- candidate minimum-weight words ------------------------------------------------


class LowWeightWords(NamedTuple):
    words: list[np.ndarray]
    upper: int


def candidate_low_weight_words(codes: Sequence[CyclicCode], A: UnitMatrix) -> LowWeightWords:
    """Codewords built from minimum-weight words of the constituents.

    For A = ((g1, g2), (0, g4)) these are (f1 h1 g1, f1 h1 g2), (0, f2 h2 g4)
    and, when f1 | f2, (f2 h2 g1 g4, 0).  ``upper`` bounds d(C) from above.
    """
    _check_shapes(codes, A)
    if not is_canonical(A):
        raise Unsupported("candidate words need the shape ((g1, g2), (0, g4)) with units")
    c1, c2 = codes
    for c in codes:
        if not c.min_words:
            raise MissingWordCache(f"no minimum-weight words cached for {c}")
    g1, g2, g4 = A[0, 0], A[0, 1], A[1, 1]
    zero = RingElement.zero(A.m, A.q)
    pairs = []
    for h in c1.min_words:
        w = c1.codeword(h)
        pairs.append((w * g1, w * g2))
    nested = is_nested(c1, c2)
    for h in c2.min_words:
        w = c2.codeword(h)
        pairs.append((zero, w * g4))
        if nested:
            pairs.append((w * g1 * g4, zero))
    words = [np.array(a.vector() + b.vector(), dtype=np.uint8) for a, b in pairs]
    upper = min(a.weight + b.weight for a, b in pairs)
    return LowWeightWords(words, upper)


# -- normalization ---------------------------------------------------------------------


class PlotkinNormalization(NamedTuple):
    matrix: UnitMatrix
    scalars: tuple[RingElement, RingElement]


def normalize_plotkin(A: UnitMatrix) -> PlotkinNormalization:
    """Map ((g1, g2), (0, g4)) to ((1, g2/g4), (0, 1)).

    The blockwise scaling (v1, v2) -> (v1 / g1, v2 / g4) carries code(A)
    bijectively onto code(A').
    """
    if A.s != 2 or A.l != 2 or not A[1, 0].is_zero():
        raise Unsupported("expected the shape ((g1, g2), (0, g4))")
    g1, g2, g4 = A[0, 0], A[0, 1], A[1, 1]
    if not is_unit(g2):
        raise NotAUnit(f"g2 = {g2.poly} is not a unit")
    inv1, inv4 = ring_inverse(g1), ring_inverse(g4)
    return PlotkinNormalization(plotkin_matrix(g2 * inv4, A.m, A.q), (inv1, inv4))


def scale_blocks(word, scalars: Sequence[RingElement]) -> np.ndarray:
    """Multiply block j of ``word`` by ``scalars[j]``."""
    m, q = scalars[0].m, scalars[0].q
    word = np.asarray(word)
    out = []
    for j, u in enumerate(scalars):
        block = RingElement(Poly(tuple(int(v) for v in word[j * m:(j + 1) * m]), q), m)
        out.extend((block * u).vector())
    return np.array(out, dtype=np.uint8)


# -- code-spec files -------------------------------------------------------------------

_QUOTIENT = re.compile(r"^\((.+)\)/\((.+)\)$")
_NAME = re.compile(r"^[A-Za-z_]\w*$")


def parse_poly_expr(text: str, q: int = 2) -> Poly:
    """Polynomial text or an exact quotient ``(P)/(D)``."""
    s = text.replace(" ", "")
    mt = _QUOTIENT.match(s)
    if mt is None:
        return parse_poly(s, q)
    num, den = parse_poly(mt.group(1), q), parse_poly(mt.group(2), q)
    quo, rem = divmod(num, den)
    if not rem.is_zero():
        raise NotADivisor(f"{mt.group(2)} does not divide {mt.group(1)}")
    return quo


@dataclass(frozen=True)
class CodeSpec:
    """Parsed code-spec file: field, length, generators f_i, and the matrix A."""

    q: int
    m: int
    generators: tuple[Poly, ...]
    matrix: tuple[tuple[Poly, ...], ...]
    symbols: dict[str, Poly] = field(default_factory=dict, compare=False)

    def codes(self) -> list[CyclicCode]:
        return [make_cyclic(f, self.m, self.q) for f in self.generators]

    def unit_matrix(self) -> UnitMatrix:
        return UnitMatrix.of(self.matrix, self.m, self.q)

    def build(self) -> MPCode:
        return build_mp(self.codes(), self.unit_matrix())


def _split_matrix(text: str) -> list[list[str]]:
    s = text.replace(" ", "")
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ParseError(f"matrix must look like [[a,b],[c,d]], got {text!r}")
    return [row.split(",") for row in s[2:-2].split("],[")]


def parse_code_spec(text: str) -> CodeSpec:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or not _NAME.match(key) or key == "x":
            raise ParseError(f"line {lineno}: expected name=value, got {raw!r}")
        if key in values:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        values[key] = val.strip()
    for req in ("m", "A", "f1"):
        if req not in values:
            raise ParseError(f"missing required key {req!r}")
    try:
        q = int(values.get("q", "2"))
        m = int(values["m"])
    except ValueError as e:
        raise ParseError(f"q and m must be integers: {e}") from e

    symbols = {k: parse_poly_expr(v, q) for k, v in values.items() if k not in ("q", "m", "A")}
    gens = []
    i = 1
    while f"f{i}" in symbols:
        gens.append(symbols[f"f{i}"])
        i += 1

    def resolve(tok: str) -> Poly:
        if tok in symbols:
            return symbols[tok]
        if _NAME.match(tok) and tok != "x":
            raise ParseError(f"undefined symbol {tok!r} in A")
        return parse_poly_expr(tok, q)

    matrix = tuple(tuple(resolve(t) for t in row) for row in _split_matrix(values["A"]))
    return CodeSpec(q, m, tuple(gens), matrix, symbols)


def load_code_spec(path: str | Path) -> CodeSpec:
    return parse_code_spec(Path(path).read_text())


PAPER_CODES = ("C1", "C2", "C3")


def paper_spec(name: str) -> CodeSpec:
    """One of the bundled record-code specs C1, C2, C3."""
    if name not in PAPER_CODES:
        raise KeyError(f"no bundled spec {name!r}; choose from {PAPER_CODES}")
    return parse_code_spec(resources.files("mpucodes.data").joinpath(f"{name}.spec").read_text())
