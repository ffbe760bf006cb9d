import json

import pytest

from mpucodes.cyclic import make_cyclic, with_min_words
from mpucodes.errors import ParseError
from mpucodes.mpu import paper_spec
from mpucodes.ringcore import Poly, parse_poly
from mpucodes.search import (Candidate, CyclicTable, GStrategy, LedgerRecord, SearchConfig,
                             build_cyclic_table, bundled_best_known, evaluate_candidate,
                             parse_best_known, read_ledger, run_search, sift_candidates,
                             sift_pairs, unit_candidates, validate_record)

from oracles import brute_force_sift


def fixed_clock():
    return "2000-01-01T00:00:00+00:00"


@pytest.fixture(scope="module")
def small_table():
    return build_cyclic_table(9)


@pytest.fixture(scope="module")
def c1_table():
    spec = paper_spec("C1")
    return CyclicTable({47: [with_min_words(c) for c in spec.codes()]})


def test_table_small_lengths(small_table):
    assert small_table.lengths == [1, 3, 5, 7, 9]
    assert all(c.min_weight is not None for m in small_table.lengths for c in small_table[m])
    assert len(small_table[7]) == 7


def test_table_round_trip(tmp_path, small_table):
    path = tmp_path / "cyc.txt"
    small_table.save(path)
    first = path.read_text().splitlines()[0]
    assert first == "1;1;1;1;1"
    back = CyclicTable.load(path)
    for m in small_table.lengths:
        for a, b in zip(small_table[m], back[m]):
            assert (a.f, a.k, a.min_weight, a.min_words) == (b.f, b.k, b.min_weight, b.min_words)


def test_table_unknown_d(tmp_path):
    table = build_cyclic_table(15, max_k_enum=8, min_m=15)
    assert any(c.min_weight is None for c in table[15])
    table.save(tmp_path / "t")
    assert "?" in (tmp_path / "t").read_text()
    back = CyclicTable.load(tmp_path / "t")
    assert [c.min_weight for c in back[15]] == [c.min_weight for c in table[15]]


def test_table_m47_and_m51():
    t = build_cyclic_table(47, max_k_enum=24, min_m=47)
    assert len(t[47]) == 7
    inner = t.lookup(47, paper_spec("C1").generators[0])
    assert inner.k == 24 and inner.min_weight == 11 and len(inner.min_words) == 4324
    t51 = build_cyclic_table(51, max_k_enum=0, min_m=51)
    ks = {c.k for c in t51[51]}
    assert {26, 27, 2} <= ks


def test_sift_excludes_pairs_failing_distance_criterion(small_table):
    ham = small_table.lookup(7, parse_poly("x^3+x+1"))
    cubic = small_table.lookup(7, parse_poly("x^4+x^2+x+1"))
    assert ham.min_weight == 3 and cubic.min_weight == 4
    pairs = {(a.f, b.f) for a, b in sift_pairs(7, small_table)}
    assert (ham.f, cubic.f) not in pairs
    for a, b in sift_pairs(7, small_table):
        assert b.min_weight > 2 * a.min_weight


def test_sift_includes_c1(tmp_path, c1_table):
    spec = paper_spec("C1")
    g = spec.symbols["g"]
    units = tmp_path / "g.txt"
    units.write_text(f"{g}\nx+1\n")  # x+1 is not a unit mod x^47-1 and is dropped
    config = SearchConfig(m_range=(47, 47), g_strategy=GStrategy("list", path=str(units)))
    cands = list(sift_candidates(47, c1_table, config))
    assert cands == [Candidate(47, spec.generators[0], spec.generators[1], g)]


@pytest.mark.parametrize("m", [1, 3, 5, 7, 9])
@pytest.mark.parametrize("quantifier", ["all-minwords", "some-minword"])
def test_sift_matches_brute_force(small_table, m, quantifier):
    config = SearchConfig(m_range=(m, m), g_strategy=GStrategy("degree", m - 1), quantifier=quantifier)
    got = {(c.m, c.f1.bits, c.f2.bits, c.g.bits) for c in sift_candidates(m, small_table, config)}
    assert got == brute_force_sift(m, m - 1, quantifier)
    if m >= 7:
        assert got


def test_some_quantifier_is_weaker(small_table):
    base = dict(m_range=(9, 9), g_strategy=GStrategy("degree", 8))
    every = set(sift_candidates(9, small_table, SearchConfig(**base)))
    some = set(sift_candidates(9, small_table, SearchConfig(**base, quantifier="some-minword")))
    assert every <= some


def test_g_strategies(tmp_path):
    assert GStrategy.parse("degree:3") == GStrategy("degree", 3)
    assert GStrategy.parse("random:10") == GStrategy("random", 10)
    assert GStrategy.parse("list:/tmp/g.txt") == GStrategy("list", path="/tmp/g.txt")
    for bad in ("degree", "degree:x", "random:-1", "list:", "sweep:3"):
        with pytest.raises(ParseError):
            GStrategy.parse(bad)
    assert len(unit_candidates(7, GStrategy("degree", 6))) == 49  # |units of F2[x]/(x^7-1)| = 1*7*7
    r1 = unit_candidates(47, GStrategy("random", 20), seed=5)
    assert r1 == unit_candidates(47, GStrategy("random", 20), seed=5) and len(r1) == 20
    assert r1 != unit_candidates(47, GStrategy("random", 20), seed=6)
    lst = tmp_path / "g.txt"
    lst.write_text("# units\nx^2+x+1\nx+1\n1\nx^2+x+1\n")
    assert unit_candidates(7, GStrategy("list", path=str(lst))) == [parse_poly("x^2+x+1"), Poly.constant(1)]


def test_best_known_bundled():
    bk = bundled_best_known()
    assert bk.get(94, 25) == 26
    assert bk.get(103, 29) == 27
    assert bk.get(10, 5) is None
    assert len(bk) == 7


def test_best_known_errors():
    with pytest.raises(ParseError, match=":2:"):
        parse_best_known("10,5,4\n10,5\n")
    with pytest.raises(ParseError):
        parse_best_known("10,5,0\n")
    with pytest.raises(ParseError):
        parse_best_known("10,5,3\n10,6,4\n")
    assert parse_best_known("# c\n10,5,4 # tail\n").get(10, 5) == 4


def test_evaluate_c1(c1_table):
    spec = paper_spec("C1")
    cand = Candidate(47, spec.generators[0], spec.generators[1], spec.symbols["g"])
    rec = evaluate_candidate(cand, c1_table, bundled_best_known(), clock=fixed_clock)
    assert (rec.n, rec.k, rec.dstar, rec.d_exact, rec.best_known_d) == (94, 25, 22, 27, 26)
    assert rec.verdict == "improves"
    validate_record(rec)
    back = LedgerRecord.from_line(rec.to_line())
    assert back == rec


def test_evaluate_plotkin_sharp(small_table):
    c1 = small_table.lookup(9, parse_poly("x^2+x+1"))
    c2 = small_table.lookup(9, parse_poly("x^8+x^7+x^6+x^5+x^4+x^3+x^2+x+1"))
    rec = evaluate_candidate(Candidate(9, c1.f, c2.f, Poly.constant(1)), small_table,
                             parse_best_known("18,8,4\n"), clock=fixed_clock)
    assert rec.d_exact == rec.dstar == min(2 * c1.min_weight, c2.min_weight)
    assert rec.verdict == "matches"


def test_evaluate_pending_over_budget():
    m = 21
    c1, c2 = make_cyclic("1", m), make_cyclic("x^2+x+1", m)
    table = CyclicTable({m: [c1, c2]})
    rec = evaluate_candidate(Candidate(m, c1.f, c2.f, Poly.constant(1)), table,
                             bundled_best_known(), clock=fixed_clock)
    assert rec.k == 40 and rec.d_exact is None and rec.verdict == "pending"


def test_ledger_determinism_and_resume(tmp_path, small_table):
    config = SearchConfig(m_range=(7, 9), g_strategy=GStrategy("degree", 2))
    best = parse_best_known("14,5,6\n18,8,4\n")
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    recs = run_search(config, best, a, table=small_table, clock=fixed_clock)
    run_search(config, best, b, table=small_table, clock=fixed_clock)
    assert recs and a.read_bytes() == b.read_bytes()
    assert run_search(config, best, a, table=small_table, clock=fixed_clock) == []
    assert len(read_ledger(a)) == len(recs)
    for line in a.read_text().splitlines():
        assert set(json.loads(line)) >= {"m", "f1", "f2", "g", "n", "k", "dstar", "d_exact",
                                         "best_known_d", "verdict", "timestamp", "seed"}


def test_ledger_partial_resume(tmp_path, small_table):
    config = SearchConfig(m_range=(7, 9), g_strategy=GStrategy("degree", 2))
    best = parse_best_known("14,5,6\n")
    full = tmp_path / "full.jsonl"
    recs = run_search(config, best, full, table=small_table, clock=fixed_clock)
    part = tmp_path / "part.jsonl"
    part.write_text("\n".join(r.to_line() for r in recs[:2]) + "\n")
    rest = run_search(config, best, part, table=small_table, clock=fixed_clock)
    assert len(rest) == len(recs) - 2
    assert part.read_bytes() == full.read_bytes()


def test_ledger_rejects_bad_witness(tmp_path, c1_table):
    spec = paper_spec("C1")
    cand = Candidate(47, spec.generators[0], spec.generators[1], spec.symbols["g"])
    rec = evaluate_candidate(cand, c1_table, bundled_best_known(), clock=fixed_clock)
    flipped = rec.witness[:-1] + ("1" if rec.witness[-1] == "0" else "0")
    bad = LedgerRecord(**{**rec.__dict__, "witness": flipped})
    path = tmp_path / "l.jsonl"
    path.write_text(bad.to_line() + "\n")
    with pytest.raises(ValueError):
        read_ledger(path)
    lie = LedgerRecord(**{**rec.__dict__, "verdict": "below"})
    with pytest.raises(ValueError):
        validate_record(lie)
