"""Polynomials over a prime field F_q and the quotient ring F_q[x]/(x^m - 1).

Binary polynomials are stored as Python ints with bit ``i`` holding the
coefficient of ``x^i``; addition is XOR and multiplication is carry-less.
For odd prime ``q`` coefficients are kept in a tuple, lowest degree first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import FieldMismatch, GcdNotOne, NotAUnit, ParseError

#: Degree reported for the zero polynomial.
ZERO_DEGREE = -1


@lru_cache(maxsize=None)
def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Prime base field F_q."""

    q: int = 2

    def __post_init__(self) -> None:
        if not _is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")


def _strip(coeffs: Iterable[int], q: int) -> tuple[int, ...]:
    c = [x % q for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _clmul(a: int, b: int) -> int:
    if a.bit_count() < b.bit_count():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a * low
        b ^= low
    return r


def _f2_divmod(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length()
    quo = 0
    while True:
        s = a.bit_length() - db
        if s < 0:
            return quo, a
        quo |= 1 << s
        a ^= b << s


class Poly:
    """Immutable polynomial over F_q."""

    __slots__ = ("q", "_rep")

    def __init__(self, coeffs: Sequence[int] = (), q: int = 2):
        if not _is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        self.q = q
        if q == 2:
            bits = 0
            for i, c in enumerate(coeffs):
                if c % 2:
                    bits |= 1 << i
            self._rep = bits
        else:
            self._rep = _strip(coeffs, q)

    @classmethod
    def _raw(cls, q: int, rep) -> "Poly":
        p = object.__new__(cls)
        p.q = q
        p._rep = rep
        return p

    @classmethod
    def from_bits(cls, bits: int) -> "Poly":
        """Binary polynomial whose coefficient of ``x^i`` is bit ``i``."""
        if bits < 0:
            raise ValueError("bit pattern must be non-negative")
        return cls._raw(2, bits)

    @classmethod
    def constant(cls, c: int, q: int = 2) -> "Poly":
        return cls((c,), q)

    @classmethod
    def monomial(cls, e: int, q: int = 2, c: int = 1) -> "Poly":
        if q == 2:
            return cls._raw(2, (c % 2) << e)
        return cls([0] * e + [c], q)

    # -- views -------------------------------------------------------------

    @property
    def bits(self) -> int:
        if self.q != 2:
            raise FieldMismatch("bit view only exists for q=2")
        return self._rep

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.q == 2:
            b = self._rep
            return tuple((b >> i) & 1 for i in range(b.bit_length()))
        return self._rep

    @property
    def degree(self) -> int:
        if self.q == 2:
            return self._rep.bit_length() - 1
        return len(self._rep) - 1

    @property
    def weight(self) -> int:
        if self.q == 2:
            return self._rep.bit_count()
        return sum(1 for c in self._rep if c)

    def is_zero(self) -> bool:
        return not self._rep

    def __bool__(self) -> bool:
        return bool(self._rep)

    def leading(self) -> int:
        if self.is_zero():
            return 0
        return 1 if self.q == 2 else self._rep[-1]

    def coeff(self, i: int) -> int:
        if self.q == 2:
            return (self._rep >> i) & 1
        return self._rep[i] if i < len(self._rep) else 0

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.q != self.q:
            raise FieldMismatch(f"q mismatch: {self.q} vs {other.q}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.q == 2:
            return Poly._raw(2, self._rep ^ other._rep)
        a, b = self._rep, other._rep
        n = max(len(a), len(b))
        return Poly._raw(self.q, _strip(
            ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)), self.q))

    def __neg__(self) -> "Poly":
        if self.q == 2:
            return self
        return Poly._raw(self.q, tuple((-c) % self.q for c in self._rep))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.q == 2:
            return Poly._raw(2, _clmul(self._rep, other._rep))
        a, b = self._rep, other._rep
        if not a or not b:
            return Poly._raw(self.q, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(self.q, _strip(out, self.q))

    def scale(self, c: int) -> "Poly":
        return self * Poly.constant(c, self.q)

    def shift(self, e: int) -> "Poly":
        """Multiply by ``x^e``."""
        if self.q == 2:
            return Poly._raw(2, self._rep << e)
        if not self._rep:
            return self
        return Poly._raw(self.q, (0,) * e + self._rep)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = self.q
        if q == 2:
            quo, rem = _f2_divmod(self._rep, other._rep)
            return Poly._raw(2, quo), Poly._raw(2, rem)
        rem = list(self._rep)
        b = other._rep
        db = len(b) - 1
        inv = pow(b[-1], -1, q)
        quo = [0] * max(len(rem) - db, 0)
        for s in range(len(rem) - 1 - db, -1, -1):
            c = (rem[s + db] * inv) % q
            if c:
                quo[s] = c
                for j, y in enumerate(b):
                    rem[s + j] = (rem[s + j] - c * y) % q
        return Poly._raw(q, _strip(quo, q)), Poly._raw(q, _strip(rem, q))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        """True iff ``self`` divides ``other``."""
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if self.is_zero() or self.q == 2:
            return self
        return self.scale(pow(self.leading(), -1, self.q))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.q == other.q and self._rep == other._rep

    def __hash__(self) -> int:
        return hash((self.q, self._rep))

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs[::-1])

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        suffix = "" if self.q == 2 else f", q={self.q}"
        return f"Poly('{format_poly(self)}'{suffix})"


# -- text format -----------------------------------------------------------

_TERM = re.compile(r"^(?:(\d+)\*?)?x(?:\^\{?(\d+)\}?)?$")
_CONST = re.compile(r"^\d+$")


def parse_poly(text: str, q: int = 2) -> Poly:
    """Parse ``x^23 + x^5 + 1``-style text.

    Terms are ``x^e``, ``x``, integer constants, or ``c*x^e`` for q > 2.
    Repeated monomials accumulate mod q.  ``-`` is accepted as subtraction.
    """
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ParseError("empty polynomial text")
    coeffs: dict[int, int] = {}
    # split keeping signs
    tokens = re.findall(r"[+-]?[^+-]+", s)
    if "".join(tokens) != s or s[-1] in "+-":
        raise ParseError(f"malformed polynomial: {text!r}")
    for tok in tokens:
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        if not tok:
            raise ParseError(f"malformed polynomial: {text!r}")
        if _CONST.match(tok):
            e, c = 0, int(tok)
        else:
            mt = _TERM.match(tok)
            if mt is None:
                raise ParseError(f"malformed term {tok!r} in {text!r}")
            c = int(mt.group(1)) if mt.group(1) is not None else 1
            e = int(mt.group(2)) if mt.group(2) is not None else 1
        coeffs[e] = coeffs.get(e, 0) + sign * c
    if not coeffs:
        return Poly((), q)
    dense = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        dense[e] = c
    return Poly(dense, q)


def format_poly(p: Poly) -> str:
    """Canonical text: descending exponents, no spaces, ``0`` for zero."""
    if p.is_zero():
        return "0"
    terms = []
    for e in range(p.degree, -1, -1):
        c = p.coeff(e)
        if not c:
            continue
        mono = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
        if c == 1:
            terms.append(mono)
        elif e == 0:
            terms.append(str(c))
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms)


def poly_weight(p: Poly) -> int:
    """Number of nonzero coefficients."""
    return p.weight


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    q = a.q
    zero, one = Poly((), q), Poly((1,), q)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv = pow(r0.leading(), -1, q)
    c = Poly.constant(inv, q)
    return r0 * c, s0 * c, t0 * c


def x_m_minus_1(m: int, q: int = 2) -> Poly:
    return Poly.monomial(m, q) - Poly.constant(1, q)


def powmod(a: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.constant(1, a.q) % mod
    base = a % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


# -- the quotient ring -----------------------------------------------------


def _reduce(p: Poly, m: int) -> Poly:
    if p.degree < m:
        return p
    if p.q == 2:
        b = p.bits
        mask = (1 << m) - 1
        while b >> m:
            b = (b & mask) ^ (b >> m)
        return Poly._raw(2, b)
    out = [0] * m
    for i, c in enumerate(p.coeffs):
        out[i % m] += c
    return Poly(out, p.q)


class RingElement:
    """Element of F_q[x]/(x^m - 1), always stored reduced."""

    __slots__ = ("poly", "m")

    def __init__(self, poly: Poly, m: int):
        if m < 1:
            raise ValueError("ring length m must be >= 1")
        self.poly = _reduce(poly, m)
        self.m = m

    @classmethod
    def parse(cls, text: str, m: int, q: int = 2) -> "RingElement":
        return cls(parse_poly(text, q), m)

    @classmethod
    def one(cls, m: int, q: int = 2) -> "RingElement":
        return cls(Poly.constant(1, q), m)

    @classmethod
    def zero(cls, m: int, q: int = 2) -> "RingElement":
        return cls(Poly((), q), m)

    @property
    def q(self) -> int:
        return self.poly.q

    @property
    def weight(self) -> int:
        return self.poly.weight

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.poly.degree <= 0

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.m != self.m or other.q != self.q:
            raise FieldMismatch(
                f"ring mismatch: (m={self.m}, q={self.q}) vs (m={other.m}, q={other.q})")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.poly + other.poly, self.m)

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.poly - other.poly, self.m)

    def __neg__(self) -> "RingElement":
        return RingElement(-self.poly, self.m)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.poly * other.poly, self.m)

    def shift(self, t: int) -> "RingElement":
        """Multiply by ``x^t`` (a cyclic rotation of the coefficients)."""
        t %= self.m
        if self.q == 2:
            b = self.poly.bits
            mask = (1 << self.m) - 1
            return RingElement(Poly._raw(2, ((b << t) | (b >> (self.m - t))) & mask), self.m)
        return RingElement(self.poly.shift(t), self.m)

    def vector(self) -> list[int]:
        """Coefficient vector of length m."""
        return [self.poly.coeff(i) for i in range(self.m)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.m == other.m and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.m, self.poly))

    def __repr__(self) -> str:
        return f"RingElement('{format_poly(self.poly)}', m={self.m}, q={self.q})"


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def is_unit(a: RingElement) -> bool:
    if a.is_zero():
        return False
    return poly_gcd(a.poly, x_m_minus_1(a.m, a.q)).degree == 0


def ring_inverse(a: RingElement) -> RingElement:
    if a.is_zero():
        raise NotAUnit("zero is not a unit")
    g, s, _ = poly_xgcd(a.poly, x_m_minus_1(a.m, a.q))
    if g.degree != 0:
        raise NotAUnit(f"{format_poly(a.poly)} shares the factor {format_poly(g)} with x^{a.m}-1")
    return RingElement(s, a.m)


# -- factorization of x^m - 1 ------------------------------------------------


def cyclotomic_cosets(m: int, q: int = 2) -> list[list[int]]:
    """q-cyclotomic cosets mod m, each sorted, ordered by smallest element."""
    seen = [False] * m
    cosets = []
    for s in range(m):
        if seen[s]:
            continue
        coset = []
        j = s
        while not seen[j]:
            seen[j] = True
            coset.append(j)
            j = (j * q) % m
        cosets.append(sorted(coset))
    return cosets


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _poly_from_index(i: int, q: int) -> Poly:
    if q == 2:
        return Poly.from_bits(i)
    digits = []
    while i:
        i, d = divmod(i, q)
        digits.append(d)
    return Poly(digits, q)


def is_irreducible(p: Poly) -> bool:
    """Ben-Or test: no factor of degree <= deg/2."""
    r = p.degree
    if r < 1:
        return False
    x = Poly.monomial(1, p.q)
    y = x
    for _ in range(r // 2):
        y = powmod(y, p.q, p)
        if poly_gcd(y - x, p).degree > 0:
            return False
    return True


def first_irreducible(r: int, q: int = 2) -> Poly:
    """Smallest monic irreducible of degree r in lexicographic coefficient order."""
    lead = Poly.monomial(r, q)
    for i in range(1, q ** r):
        cand = lead + _poly_from_index(i, q)
        if cand.coeff(0) and is_irreducible(cand):
            return cand
    if r == 1:
        return Poly.monomial(1, q)
    raise RuntimeError(f"no irreducible of degree {r} over F_{q}")  # unreachable


def _root_of_unity(m: int, q: int, modulus: Poly) -> Poly:
    r = modulus.degree
    e = (q ** r - 1) // m
    one = Poly.constant(1, q)
    primes = _prime_factors(m)
    for i in range(1, q ** r):
        beta = powmod(_poly_from_index(i, q), e, modulus)
        if beta.is_zero():
            continue
        if all(powmod(beta, m // p, modulus) != one for p in primes):
            return beta
    raise RuntimeError(f"no primitive {m}-th root of unity in F_{q}^{r}")  # unreachable


def factor_xm_minus_1(m: int, q: int = 2) -> list[Poly]:
    """Monic irreducible factors of x^m - 1, sorted by (degree, coefficients).

    Each factor is the minimal polynomial of beta^s over one q-cyclotomic coset,
    with beta a primitive m-th root of unity in F_{q^r}, r = ord_m(q).
    """
    FieldSpec(q)
    if m < 1:
        raise ValueError("m must be >= 1")
    if m % q == 0:
        raise GcdNotOne(f"gcd(m={m}, q={q}) != 1")
    cosets = cyclotomic_cosets(m, q)
    if m == 1:
        return [x_m_minus_1(1, q)]
    r = len(cosets[1])
    modulus = first_irreducible(r, q) if r > 1 else Poly.monomial(1, q)
    beta = _root_of_unity(m, q, modulus)
    one = Poly.constant(1, q)
    factors = []
    for coset in cosets:
        # coefficients over F_{q^r}, lowest degree first
        acc = [one]
        for j in coset:
            root = powmod(beta, j, modulus)
            nxt = [Poly((), q)] * (len(acc) + 1)
            for i, c in enumerate(acc):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = (nxt[i] - c * root) % modulus
            acc = nxt
        if any(c.degree > 0 for c in acc):
            raise RuntimeError("minimal polynomial left the base field")  # unreachable
        factors.append(Poly([c.coeff(0) for c in acc], q))
    factors.sort(key=Poly.sort_key)
    return factors
