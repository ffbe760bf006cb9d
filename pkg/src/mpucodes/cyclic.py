"""Cyclic codes of length m generated by divisors of x^m - 1."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations

import numpy as np

from .errors import CapExceeded, FieldMismatch, NotADivisor
from .mindist import LinearCode, min_weight_messages
from .ringcore import Poly, RingElement, factor_xm_minus_1, format_poly, parse_poly, x_m_minus_1

DEFAULT_ENUM_CAP = 28


@dataclass(frozen=True)
class CyclicCode:
    """The ideal (f) of F_q[x]/(x^m - 1).

    ``min_words`` holds the multipliers h (deg h < k) with wt(f h) = d; both
    caches are filled by :func:`with_min_words`.
    """

    f: Poly
    m: int
    min_weight: int | None = field(default=None, compare=False)
    min_words: tuple[Poly, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.f.q

    @property
    def k(self) -> int:
        return self.m - self.f.degree

    @property
    def params(self) -> tuple[int, int, int | None]:
        return self.m, self.k, self.min_weight

    def codeword(self, h: Poly) -> RingElement:
        return RingElement(self.f * h, self.m)

    def __str__(self) -> str:
        d = "?" if self.min_weight is None else self.min_weight
        return f"({format_poly(self.f)}) [{self.m},{self.k},{d}]"


def make_cyclic(f: Poly | str, m: int, q: int = 2) -> CyclicCode:
    if isinstance(f, str):
        f = parse_poly(f, q)
    if f.is_zero():
        raise NotADivisor("the zero polynomial generates no cyclic code")
    if f.degree >= m:
        raise NotADivisor(f"deg f = {f.degree} must be < m = {m}")
    f = f.monic()
    if not f.divides(x_m_minus_1(m, f.q)):
        raise NotADivisor(f"{format_poly(f)} does not divide x^{m}-1")
    return CyclicCode(f, m)


def enumerate_divisors(m: int, q: int = 2) -> list[CyclicCode]:
    """Every proper monic divisor f of x^m - 1 (so every nonzero cyclic code)."""
    factors = factor_xm_minus_1(m, q)
    one = Poly.constant(1, q)
    out = []
    for size in range(len(factors)):
        for subset in combinations(factors, size):
            f = one
            for g in subset:
                f = f * g
            out.append(CyclicCode(f, m))
    out.sort(key=lambda c: c.f.sort_key())
    return out


def generator_matrix(c: CyclicCode) -> LinearCode:
    """Rows are x^i f for i = 0..k-1 (no reduction needed since deg < m)."""
    coeffs = c.f.coeffs
    G = np.zeros((c.k, c.m), dtype=np.uint8)
    for i in range(c.k):
        G[i, i:i + len(coeffs)] = coeffs
    return LinearCode(G, c.q)


def min_weight_words(c: CyclicCode, enum_cap: int = DEFAULT_ENUM_CAP) -> tuple[int, list[Poly]]:
    if c.min_weight is not None and c.min_words is not None:
        return c.min_weight, list(c.min_words)
    if c.k > enum_cap:
        raise CapExceeded(f"k={c.k} exceeds enumeration cap {enum_cap}")
    d, msgs = min_weight_messages(generator_matrix(c))
    if c.q == 2:
        words = [Poly.from_bits(int(b)) for b in _bits_of(msgs)]
    else:
        words = [Poly(tuple(int(v) for v in row), c.q) for row in msgs]
    words.sort(key=Poly.sort_key)
    return d, words


def _bits_of(msgs: np.ndarray) -> list[int]:
    shifts = np.arange(msgs.shape[1], dtype=np.int64)
    return (msgs.astype(np.int64) << shifts).sum(axis=1).tolist()


def with_min_words(c: CyclicCode, enum_cap: int = DEFAULT_ENUM_CAP) -> CyclicCode:
    d, words = min_weight_words(c, enum_cap)
    return replace(c, min_weight=d, min_words=tuple(words))


def is_nested(inner: CyclicCode, outer: CyclicCode) -> bool:
    """True iff f_inner divides f_outer, i.e. outer is a subcode of inner."""
    if inner.m != outer.m or inner.q != outer.q:
        raise FieldMismatch("nesting needs codes of equal length over the same field")
    return inner.f.divides(outer.f)
