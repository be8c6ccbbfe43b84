from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (all_words, closed_form_rational, coeffs_from_counts, des_counts, has_abab,
                     series_by_division, stirling_literal)
from qstirling.combinatorics import MultisetSpec, enumerate_words, is_quasi_stirling, multisets_up_to
from qstirling.errors import SizeLimitError
from qstirling.polynomial import (IntPolynomial, binomial, closed_form_coefficient,
                                  eulerian_polynomial, expand_series, lemma_sum_identity,
                                  quasi_stirling_polynomial, stirling_polynomial,
                                  verify_main_identity)

P = IntPolynomial


def test_canonical_form():
    assert P((1, 2, 0, 0)).coeffs == (1, 2)
    assert P((0, 0)).is_zero() and P(()).degree == -1
    assert P((0, 1, 3)) == P((0, 1, 3, 0))


def test_arithmetic():
    a, b = P((1, 1)), P((0, 2))
    assert a * b == P((0, 2, 2))
    assert a + b == P((1, 3))
    assert (a - a).is_zero()
    assert a ** 3 == P((1, 3, 3, 1))
    assert P((0, 1, 7, 4))(1) == 12
    assert P((0, 1, 7, 4)).derivative() == P((1, 14, 12))
    assert 3 * a == P((3, 3))


def test_text_forms():
    p = P((0, 1, 7, 4))
    assert p.to_text() == "4*t^3 + 7*t^2 + t"
    assert p.pretty() == "t + 7t^2 + 4t^3"
    assert P((1, -3, 1)).to_text() == "t^2 - 3*t + 1"
    assert P(()).to_text() == "0"
    assert P((-2,)).pretty() == "-2"


@pytest.mark.parametrize("a, b, value", [(4, 3, 4), (5, 4, 5), (7, 0, 1), (3, 5, 0), (3, -1, 0)])
def test_binomial(a, b, value):
    assert binomial(a, b) == value


@pytest.mark.parametrize("mult, coeffs", [
    ((1, 2, 1), (0, 1, 7, 4)),
    ((1, 2), (0, 1, 2)),
    ((2, 2), (0, 1, 3)),
    ((2, 2, 2), (0, 1, 13, 16)),
    ((3, 3), (0, 1, 5)),
    ((1,), (0, 1)),
])
def test_quasi_stirling_polynomial_values(mult, coeffs):
    M = MultisetSpec(mult)
    assert quasi_stirling_polynomial(M).coeffs == coeffs
    assert quasi_stirling_polynomial(M, "trees").coeffs == coeffs


@pytest.mark.parametrize("M", multisets_up_to(6), ids=str)
def test_polynomials_against_brute_force(M):
    words = all_words(M.mult)
    quasi = coeffs_from_counts(des_counts([w for w in words if not has_abab(w)]))
    stir = coeffs_from_counts(des_counts([w for w in words if stirling_literal(w)]))
    assert quasi_stirling_polynomial(M).coeffs == quasi
    assert stirling_polynomial(M).coeffs == stir


@pytest.mark.parametrize("M", multisets_up_to(8), ids=str)
def test_polynomial_invariants(M):
    q = quasi_stirling_polynomial(M)
    assert q == quasi_stirling_polynomial(M, "trees")
    assert q.coeff(0) == 0
    assert all(c >= 0 for c in q.coeffs)
    if M.K <= 7:
        assert q(1) == sum(1 for w in enumerate_words(M) if is_quasi_stirling(w))
    reduced = MultisetSpec((M.K - M.n + 1,) + (1,) * (M.n - 1))
    assert q == stirling_polynomial(reduced)


def test_stirling_polynomial_examples():
    assert stirling_polynomial(MultisetSpec((2, 1, 1))) == P((0, 1, 7, 4))
    assert stirling_polynomial(MultisetSpec((2,))) == P((0, 1))
    for n in range(1, 7):
        assert stirling_polynomial(MultisetSpec((1,) * n)) == eulerian_polynomial(n)


def test_eulerian():
    assert eulerian_polynomial(1) == P((0, 1))
    assert eulerian_polynomial(2) == P((0, 1, 1))
    assert eulerian_polynomial(3) == P((0, 1, 4, 1))
    for n in range(1, 12):
        assert eulerian_polynomial(n)(1) == factorial(n)


def test_expand_series_examples():
    assert expand_series(P((0, 1, 3)), 4, 2).coeffs == (0, 1, 8)
    assert expand_series(P((0, 1, 7, 4)), 4, 3).coeffs == (0, 1, 12, 54)
    assert expand_series(P(()), 3, 4).coeffs == (0, 0, 0, 0, 0)
    s = expand_series(P((0, 1)), 1, 5)
    assert s.coeffs == (0, 1, 2, 3, 4, 5) and s.denominator_power == 2


@given(st.lists(st.integers(-20, 20), max_size=6), st.integers(0, 6), st.integers(0, 12))
def test_expand_series_against_iterated_division(coeffs, K, m_max):
    p = P(tuple(coeffs))
    assert expand_series(p, K, m_max).coeffs == series_by_division(p.coeffs, K, m_max)


def test_closed_form_examples():
    M = MultisetSpec((1, 2, 1))
    assert [closed_form_coefficient(M, m) for m in range(4)] == [0, 1, 12, 54]
    for n in range(1, 6):
        sq = MultisetSpec.uniform(n, 2)
        for m in range(8):
            assert closed_form_coefficient(sq, m) == Fraction(m ** n, n + 1) * comb(n + m, m)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=6), st.integers(0, 15))
def test_closed_form_is_the_rational_form(mult, m):
    M = MultisetSpec(tuple(mult))
    value = closed_form_coefficient(M, m)
    assert value >= 0
    assert value == closed_form_rational(M.mult, m)


def test_verify_main_identity_examples():
    report = verify_main_identity(MultisetSpec((1, 2, 1)), 10)
    assert report.passed and report.methods_agree
    assert [r.series for r in report.rows[:4]] == [0, 1, 12, 54]
    d = report.to_dict()
    assert set(d) >= {"multiset", "K", "n", "m_max", "rows", "pass"}
    assert set(d["rows"][0]) == {"m", "series", "closed_form", "ok"}
    report = verify_main_identity(MultisetSpec((1,)), 5)
    assert [r.series for r in report.rows] == [0, 1, 2, 3, 4, 5]


def test_eulerian_identity():
    for n in range(1, 9):
        series = expand_series(eulerian_polynomial(n), n, 12)
        assert series.coeffs == tuple(m ** n for m in range(13))
        report = verify_main_identity(MultisetSpec((1,) * n), 6)
        assert report.passed


def test_size_limit():
    with pytest.raises(SizeLimitError):
        quasi_stirling_polynomial(MultisetSpec((5, 5)))
    with pytest.raises(SizeLimitError):
        quasi_stirling_polynomial(MultisetSpec((5, 5)), "trees", cap=8)
    with pytest.raises(ValueError):
        quasi_stirling_polynomial(MultisetSpec((1,)), "magic")


def test_binomial_sum_identity():
    assert lemma_sum_identity(2, 2) and lemma_sum_identity(2, 1)
    for m in range(1, 10):
        assert sum(range(1, m + 1)) == comb(m + 1, 2)
        assert lemma_sum_identity(1, m)
    assert all(lemma_sum_identity(n, m) for n in range(1, 31) for m in range(1, 31))
    with pytest.raises(ValueError):
        lemma_sum_identity(0, 1)
