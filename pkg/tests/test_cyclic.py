import numpy as np
import pytest
from hypothesis import given, strategies as st

from mpucodes.codeops import same_code
from mpucodes.cyclic import (enumerate_divisors, generator_matrix, is_nested, make_cyclic,
                             min_weight_words, with_min_words)
from mpucodes.errors import CapExceeded, FieldMismatch, NotADivisor
from mpucodes.mindist import LinearCode, rank_and_reduce
from mpucodes.ringcore import Poly, RingElement, is_unit, parse_poly, poly_gcd, x_m_minus_1

from oracles import cyclic_rows, divisors_by_trial, mitm_min_weight, naive_min_words

C1_F1 = ("x^23 + x^22 + x^21 + x^20 + x^18 + x^17 + x^16 + x^14 + x^13 + x^11 + x^10"
         " + x^9 + x^5 + x^4 + 1")
ODD_M = [1, 3, 5, 7, 9, 11, 13, 15]


def test_make_cyclic_examples():
    full = make_cyclic("1", 7)
    assert (full.m, full.k) == (7, 7)
    assert min_weight_words(full)[0] == 1
    rep = make_cyclic(x_m_minus_1(47) // parse_poly("x+1"), 47)
    assert rep.k == 1
    assert min_weight_words(rep) == (47, [Poly.constant(1)])
    with pytest.raises(NotADivisor):
        make_cyclic("x^2+x", 7)
    with pytest.raises(NotADivisor):
        make_cyclic("x^7+1", 7)


@pytest.mark.parametrize("m, count", [(7, 7), (1, 1), (47, 7), (9, 7), (15, 31)])
def test_enumerate_divisors_count(m, count):
    codes = enumerate_divisors(m)
    assert len(codes) == count
    if m <= 15:
        assert {c.f.bits for c in codes} == set(divisors_by_trial(m)) - {(1 << m) | 1}


@pytest.mark.parametrize("m", [7, 9, 15])
def test_divisor_row_spaces_distinct(m):
    echelons = {rank_and_reduce(generator_matrix(c).G)[1].tobytes() for c in enumerate_divisors(m)}
    assert len(echelons) == len(enumerate_divisors(m))


def test_generator_matrix_examples():
    rep = generator_matrix(make_cyclic("x^6+x^5+x^4+x^3+x^2+x+1", 7))
    assert rep.G.tolist() == [[1] * 7]
    assert generator_matrix(make_cyclic("x+1", 3)).G.tolist() == [[1, 1, 0], [0, 1, 1]]
    ham = generator_matrix(make_cyclic("x^3+x+1", 7))
    assert ham.G.shape == (4, 7) and rank_and_reduce(ham.G)[0] == 4


def test_min_weight_words_examples():
    assert min_weight_words(make_cyclic("x^6+x^5+x^4+x^3+x^2+x+1", 7)) == (7, [Poly.constant(1)])
    d, words = min_weight_words(make_cyclic("x^3+x+1", 7))
    assert d == 3 and len(words) == 7


def test_min_weight_words_cap():
    with pytest.raises(CapExceeded):
        min_weight_words(make_cyclic("1", 15), enum_cap=10)


@pytest.mark.parametrize("m", ODD_M)
def test_min_weight_words_matches_naive(m):
    for c in enumerate_divisors(m):
        d, words = min_weight_words(c)
        nd, nhs = naive_min_words(c.f.bits, m)
        assert d == nd
        assert {h.bits for h in words} == nhs
        for h in words:
            assert (RingElement(h, m) * RingElement(c.f, m)).weight == d


def test_c1_inner_code_by_split_table():
    c = with_min_words(make_cyclic(C1_F1, 47))
    d, count = mitm_min_weight(cyclic_rows(c.f.bits, 47))
    assert (c.k, c.min_weight, len(c.min_words)) == (24, d, count)
    assert all(c.codeword(h).weight == d for h in c.min_words)


def test_is_nested_examples():
    f1 = make_cyclic(C1_F1, 47)
    f2 = make_cyclic(x_m_minus_1(47) // parse_poly("x+1"), 47)
    assert is_nested(make_cyclic("1", 47), f1)
    assert is_nested(f1, f2)
    assert not is_nested(f2, f1)
    assert not is_nested(make_cyclic("x^3+x+1", 7), make_cyclic("x^3+x^2+1", 7))
    with pytest.raises(FieldMismatch):
        is_nested(make_cyclic("1", 7), make_cyclic("1", 5))


@given(st.sampled_from(ODD_M[1:]), st.data())
def test_same_code_for_unit_multiple(m, data):
    c = data.draw(st.sampled_from(enumerate_divisors(m)))
    u = data.draw(st.integers(1, (1 << m) - 1).map(lambda b: RingElement(Poly.from_bits(b), m))
                  .filter(is_unit))
    fu = (RingElement(c.f, m) * u).poly
    other = make_cyclic(poly_gcd(fu, x_m_minus_1(m)), m)
    assert same_code(generator_matrix(c), generator_matrix(other))
    # the raw multiple f*u spans the same code as well
    shifts = [(RingElement(fu, m).shift(t)).vector() for t in range(m)]
    assert same_code(generator_matrix(c), LinearCode.span(np.array(shifts), 2))


def test_qary_cyclic():
    c = make_cyclic("x+2", 4, q=3)  # x - 1 over F_3
    d, words = min_weight_words(c)
    assert (c.k, d) == (3, 2)
    G = generator_matrix(c)
    assert G.q == 3 and G.G.shape == (3, 4)
