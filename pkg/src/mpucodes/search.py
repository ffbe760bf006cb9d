"""Sifted search over binary codes [C1 C2] . ((1, g), (0, 1)).

Candidates are nested pairs f1 | f2 with d2 > 2 d1 and units g that lift
every (or some) minimum-weight word f1 h1 of C1 above weight d1 after
multiplication by g.  Survivors are evaluated exactly and compared against
a best-known table; results go to an append-only JSON-lines ledger.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .cyclic import DEFAULT_ENUM_CAP, CyclicCode, enumerate_divisors, is_nested, with_min_words
from .errors import BudgetExceeded, CapExceeded, ParseError
from .mindist import MAX_BINARY_K, min_distance_exhaustive
from .mpu import build_mp, dstar, plotkin_matrix
from .ringcore import Poly, RingElement, format_poly, is_unit, parse_poly

log = logging.getLogger(__name__)


# -- cyclic table ------------------------------------------------------------------


class CyclicTable:
    """All binary cyclic codes per length, with d and minimum-weight words where known."""

    def __init__(self, codes: dict[int, list[CyclicCode]] | None = None):
        self.codes: dict[int, list[CyclicCode]] = {m: list(cs) for m, cs in (codes or {}).items()}

    @property
    def lengths(self) -> list[int]:
        return sorted(self.codes)

    def __getitem__(self, m: int) -> list[CyclicCode]:
        return self.codes[m]

    def __contains__(self, m: int) -> bool:
        return m in self.codes

    def lookup(self, m: int, f: Poly) -> CyclicCode:
        for c in self.codes[m]:
            if c.f == f:
                return c
        raise KeyError(f"({format_poly(f)}) not in the table for m={m}")

    def save(self, path: str | Path, words_path: str | Path | None = None) -> None:
        path = Path(path)
        words_path = Path(words_path) if words_path else path.with_suffix(path.suffix + ".words")
        with path.open("w") as ft, words_path.open("w") as fw:
            for m in self.lengths:
                for c in self.codes[m]:
                    f = format_poly(c.f)
                    d = "?" if c.min_weight is None else str(c.min_weight)
                    cnt = "?" if c.min_words is None else str(len(c.min_words))
                    ft.write(f"{m};{f};{c.k};{d};{cnt}\n")
                    for h in c.min_words or ():
                        fw.write(f"{m};{f};{format_poly(h)}\n")

    @classmethod
    def load(cls, path: str | Path, words_path: str | Path | None = None) -> "CyclicTable":
        path = Path(path)
        words_path = Path(words_path) if words_path else path.with_suffix(path.suffix + ".words")
        words: dict[tuple[int, str], list[Poly]] = {}
        if words_path.exists():
            for lineno, line in enumerate(words_path.read_text().splitlines(), 1):
                if not line.strip():
                    continue
                try:
                    m, f, h = line.split(";")
                    words.setdefault((int(m), f), []).append(parse_poly(h))
                except ValueError as e:
                    raise ParseError(f"{words_path}:{lineno}: {e}") from e
        codes: dict[int, list[CyclicCode]] = {}
        for lineno, line in enumerate(path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                m_s, f_s, k_s, d_s, cnt_s = line.split(";")
                m = int(m_s)
                c = CyclicCode(parse_poly(f_s), m)
                if c.k != int(k_s):
                    raise ValueError(f"k={k_s} disagrees with deg f")
            except ValueError as e:
                raise ParseError(f"{path}:{lineno}: {e}") from e
            if d_s != "?":
                ws = words.get((m, f_s), [])
                if cnt_s != "?" and len(ws) != int(cnt_s):
                    raise ParseError(f"{path}:{lineno}: expected {cnt_s} words, found {len(ws)}")
                c = dataclasses.replace(c, min_weight=int(d_s), min_words=tuple(ws))
            codes.setdefault(m, []).append(c)
        return cls(codes)


def odd_lengths(lo: int, hi: int) -> list[int]:
    return [m for m in range(max(lo, 1), hi + 1) if m % 2]


def build_cyclic_table(max_m: int, max_k_enum: int = DEFAULT_ENUM_CAP, min_m: int = 1) -> CyclicTable:
    """Binary cyclic codes for odd m in [min_m, max_m]; d filled where k <= max_k_enum."""
    codes = {}
    for m in odd_lengths(min_m, max_m):
        row = []
        for c in enumerate_divisors(m, 2):
            if c.k <= max_k_enum:
                c = with_min_words(c, max_k_enum)
            row.append(c)
        codes[m] = row
        log.info("cyclic table: m=%d, %d codes", m, len(row))
    return CyclicTable(codes)


# -- configuration ---------------------------------------------------------------------


@dataclass(frozen=True)
class GStrategy:
    """How units g are proposed: ``degree:D``, ``random:N`` or ``list:PATH``."""

    kind: str
    value: int | None = None
    path: str | None = None

    @classmethod
    def parse(cls, text: str) -> "GStrategy":
        kind, _, arg = text.partition(":")
        if kind in ("degree", "random"):
            try:
                n = int(arg)
            except ValueError:
                raise ParseError(f"g-strategy {text!r}: expected an integer after '{kind}:'") from None
            if n < 0:
                raise ParseError(f"g-strategy {text!r}: negative argument")
            return cls(kind, value=n)
        if kind == "list" and arg:
            return cls(kind, path=arg)
        raise ParseError(f"unknown g-strategy {text!r}; use degree:D, random:N or list:PATH")

    def __str__(self) -> str:
        return f"{self.kind}:{self.path if self.kind == 'list' else self.value}"


@dataclass(frozen=True)
class SearchConfig:
    m_range: tuple[int, int]
    g_strategy: GStrategy = field(default_factory=lambda: GStrategy("degree", 3))
    max_k_enum: int = DEFAULT_ENUM_CAP
    quantifier: str = "all-minwords"
    total_k_cap: int = MAX_BINARY_K
    seed: int = 0

    def __post_init__(self) -> None:
        if self.quantifier not in ("all-minwords", "some-minword"):
            raise ValueError(f"quantifier must be all-minwords or some-minword, got {self.quantifier!r}")
        if self.total_k_cap > MAX_BINARY_K:
            raise ValueError(f"total_k_cap may not exceed the engine guard {MAX_BINARY_K}")

    @property
    def lengths(self) -> list[int]:
        return odd_lengths(*self.m_range)


def unit_candidates(m: int, strategy: GStrategy, seed: int = 0) -> list[Poly]:
    """Units g of F_2[x]/(x^m - 1) proposed by ``strategy``, in a fixed order."""
    if strategy.kind == "degree":
        top = min(strategy.value, m - 1)
        gs = (Poly.from_bits(b) for b in range(1, 1 << (top + 1)))
    elif strategy.kind == "random":
        rng = random.Random(seed * 1_000_003 + m)
        picked: dict[int, None] = {}
        attempts = 0
        while len(picked) < strategy.value and attempts < 50 * strategy.value + 100:
            attempts += 1
            b = rng.randrange(1, 1 << m)
            if b not in picked and is_unit(RingElement(Poly.from_bits(b), m)):
                picked[b] = None
        return [Poly.from_bits(b) for b in picked]
    else:
        gs = (RingElement.parse(line, m).poly
              for line in Path(strategy.path).read_text().splitlines()
              if line.strip() and not line.lstrip().startswith("#"))
    out, seen = [], set()
    for g in gs:
        if g not in seen and is_unit(RingElement(g, m)):
            seen.add(g)
            out.append(g)
    return out


# -- sifting ---------------------------------------------------------------------------


class Candidate(NamedTuple):
    m: int
    f1: Poly
    f2: Poly
    g: Poly

    @property
    def key(self) -> tuple[int, str, str, str]:
        return (self.m, format_poly(self.f1), format_poly(self.f2), format_poly(self.g))


def passes_weight_test(c1: CyclicCode, g: Poly, quantifier: str = "all-minwords") -> bool:
    """wt(f1 h1 g) > d1 for all (or some) cached minimum-weight h1."""
    gg = RingElement(g, c1.m)
    lifted = ((c1.codeword(h) * gg).weight > c1.min_weight for h in c1.min_words)
    return all(lifted) if quantifier == "all-minwords" else any(lifted)


def sift_pairs(m: int, table: CyclicTable) -> Iterator[tuple[CyclicCode, CyclicCode]]:
    """Nested pairs C1 > C2 (f1 | f2, f1 != f2) with d2 > 2 d1."""
    codes = table[m]
    for c1 in codes:
        for c2 in codes:
            if c1.f == c2.f or not is_nested(c1, c2):
                continue
            if c1.min_weight is None or not c1.min_words or c2.min_weight is None:
                log.info("skip m=%d f1=%s f2=%s: minimum distance unknown (k beyond cap)",
                         m, format_poly(c1.f), format_poly(c2.f))
                continue
            if c2.min_weight > 2 * c1.min_weight:
                yield c1, c2


def sift_candidates(m: int, table: CyclicTable, config: SearchConfig) -> Iterator[Candidate]:
    units = unit_candidates(m, config.g_strategy, config.seed)
    for c1, c2 in sift_pairs(m, table):
        for g in units:
            if passes_weight_test(c1, g, config.quantifier):
                yield Candidate(m, c1.f, c2.f, g)


# -- best-known tables ---------------------------------------------------------------


@dataclass(frozen=True)
class BestKnownTable:
    entries: dict[tuple[int, int], int]

    def get(self, n: int, k: int) -> int | None:
        return self.entries.get((n, k))

    def __len__(self) -> int:
        return len(self.entries)


def parse_best_known(text: str, source: str = "<text>") -> BestKnownTable:
    entries: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            n, k, d = (int(t) for t in line.split(","))
        except ValueError:
            raise ParseError(f"{source}:{lineno}: expected 'n,k,d', got {raw!r}") from None
        if min(n, k, d) <= 0:
            raise ParseError(f"{source}:{lineno}: values must be positive")
        entries[(n, k)] = d
    for (n, k), d in entries.items():
        nxt = entries.get((n, k + 1))
        if nxt is not None and nxt > d:
            raise ParseError(f"{source}: d({n},{k + 1})={nxt} exceeds d({n},{k})={d}")
    return BestKnownTable(entries)


def load_best_known(source: str | Path) -> BestKnownTable:
    return parse_best_known(Path(source).read_text(), str(source))


def bundled_best_known() -> BestKnownTable:
    """The comparison rows quoted next to the record codes."""
    text = resources.files("mpucodes.data").joinpath("best_known_paper.txt").read_text()
    return parse_best_known(text, "best_known_paper.txt")


# -- ledger ----------------------------------------------------------------------------


@dataclass
class LedgerRecord:
    m: int
    f1: str
    f2: str
    g: str
    n: int
    k: int
    dstar: int | None
    d_exact: int | None
    best_known_d: int | None
    verdict: str
    timestamp: str
    seed: int
    witness: str | None = None

    @property
    def key(self) -> tuple[int, str, str, str]:
        return (self.m, self.f1, self.f2, self.g)

    def to_line(self) -> str:
        return json.dumps(dataclasses.asdict(self), separators=(",", ":"))

    @classmethod
    def from_line(cls, line: str) -> "LedgerRecord":
        return cls(**json.loads(line))

    def build(self):
        c1 = CyclicCode(parse_poly(self.f1), self.m)
        c2 = CyclicCode(parse_poly(self.f2), self.m)
        return build_mp([c1, c2], plotkin_matrix(parse_poly(self.g), self.m))


def verdict_for(d: int | None, best: int | None) -> str:
    if d is None:
        return "pending"
    if best is None:
        return "unlisted"
    return "improves" if d > best else ("matches" if d == best else "below")


def validate_record(rec: LedgerRecord) -> None:
    """Re-check an ``improves`` record: its witness is a codeword of weight d_exact."""
    if rec.verdict != verdict_for(rec.d_exact, rec.best_known_d):
        raise ValueError(f"record {rec.key}: verdict {rec.verdict!r} inconsistent with d values")
    if rec.verdict != "improves":
        return
    if rec.witness is None:
        raise ValueError(f"record {rec.key}: improves without a witness")
    w = np.frombuffer(rec.witness.encode(), dtype=np.uint8) - ord("0")
    if int(w.sum()) != rec.d_exact:
        raise ValueError(f"record {rec.key}: witness weight {int(w.sum())} != d_exact {rec.d_exact}")
    if not rec.build().code.contains(w):
        raise ValueError(f"record {rec.key}: witness is not a codeword")


def read_ledger(path: str | Path, validate: bool = True) -> list[LedgerRecord]:
    path = Path(path)
    if not path.exists():
        return []
    out = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = LedgerRecord.from_line(line)
        except (ValueError, TypeError) as e:
            raise ParseError(f"{path}:{lineno}: {e}") from e
        if validate:
            validate_record(rec)
        out.append(rec)
    return out


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def evaluate_candidate(cand: Candidate, table: CyclicTable, best_known: BestKnownTable,
                       total_k_cap: int = MAX_BINARY_K, seed: int = 0,
                       workers: int | None = None, clock: Callable[[], str] = _now) -> LedgerRecord:
    c1, c2 = table.lookup(cand.m, cand.f1), table.lookup(cand.m, cand.f2)
    A = plotkin_matrix(cand.g, cand.m)
    mp = build_mp([c1, c2], A)
    try:
        bound = dstar([c1, c2], A)
    except CapExceeded:
        bound = None
    d, witness = None, None
    if mp.k <= total_k_cap:
        try:
            rep = min_distance_exhaustive(mp.code, workers=workers)
            d, witness = rep.d, "".join(map(str, rep.witness.tolist()))
        except BudgetExceeded:
            pass
    best = best_known.get(mp.n, mp.k)
    verdict = verdict_for(d, best)
    return LedgerRecord(
        m=cand.m, f1=format_poly(cand.f1), f2=format_poly(cand.f2), g=format_poly(cand.g),
        n=mp.n, k=mp.k, dstar=bound, d_exact=d, best_known_d=best, verdict=verdict,
        timestamp=clock(), seed=seed, witness=witness if verdict == "improves" else None)


def run_search(config: SearchConfig, best_known: BestKnownTable, ledger_path: str | Path,
               table: CyclicTable | None = None, workers: int | None = None,
               clock: Callable[[], str] = _now) -> list[LedgerRecord]:
    """Sift and evaluate every length in ``config``; returns the newly written records.

    Records already present in the ledger are skipped, so an interrupted run
    resumes where it stopped.
    """
    ledger_path = Path(ledger_path)
    done = {r.key for r in read_ledger(ledger_path)}
    if table is None:
        lo, hi = config.m_range
        table = build_cyclic_table(hi, config.max_k_enum, min_m=lo)
    written = []
    with ledger_path.open("a") as fh:
        for m in config.lengths:
            if m not in table:
                log.info("no table entries for m=%d", m)
                continue
            for cand in sift_candidates(m, table, config):
                if cand.key in done:
                    continue
                rec = evaluate_candidate(cand, table, best_known, config.total_k_cap,
                                         config.seed, workers, clock)
                fh.write(rec.to_line() + "\n")
                fh.flush()
                done.add(cand.key)
                written.append(rec)
    return written
