"""One test per acceptance criterion, each with its own time budget.

Every test records a pass/fail line that is printed in the terminal summary.
"""
import math
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES, WORKED_WORD, WORKED_BLOCK_TREE, WORKED_P, WORKED_S
from qstirling.analysis import analyze
from qstirling.codes import parse_block_tree, parse_code_pair, theta, theta_inverse
from qstirling.combinatorics import (MultisetSpec, des, enumerate_words, is_quasi_stirling,
                                     multisets_up_to, special_counts)
from qstirling.polynomial import (IntPolynomial, closed_form_coefficient, eulerian_polynomial,
                                  expand_series, lemma_sum_identity, quasi_stirling_polynomial,
                                  verify_main_identity)
from qstirling.verify import check_codes, check_phi, spot_check

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number, title, budget):
    """Time the block, record a summary line, and fail on a blown budget."""
    state = {"ok": False}
    start = time.perf_counter()
    try:
        yield state
        state["ok"] = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < budget
        verdict = "PASS" if state["ok"] and in_time else "FAIL"
        note = "" if in_time else f" (over the {budget:g}s budget)"
        line = f"[{verdict}] {number}. {title}: {elapsed:.2f}s{note}"
        ACCEPTANCE_LINES[number] = line
        print(line)
    assert in_time, line


def test_1_example_polynomial():
    with criterion(1, "Qbar for {1, 2^2, 3} is t + 7t^2 + 4t^3", 1):
        M = MultisetSpec((1, 2, 1))
        assert quasi_stirling_polynomial(M) == IntPolynomial((0, 1, 7, 4))
        assert quasi_stirling_polynomial(M, "trees") == IntPolynomial((0, 1, 7, 4))


def test_2_main_identity_up_to_8():
    with criterion(2, "series identity for every M with K <= 8, m <= 10", 300):
        checked = 0
        for M in multisets_up_to(8):
            report = verify_main_identity(M, 10)
            assert report.methods_agree, M
            for row in report.rows:
                assert row.series == row.closed_form == closed_form_coefficient(M, row.m), (M, row)
            checked += 1
        assert checked == 2 ** 8 - 1


def test_3_squares_n3():
    with criterion(3, "{1^2, 2^2, 3^2}: identity, 30 words, 16 with des 3", 10):
        M = MultisetSpec((2, 2, 2))
        report = verify_main_identity(M, 10)
        assert report.passed
        for row in report.rows:
            assert 4 * row.series == row.m ** 3 * (3 + row.m) * (2 + row.m) * (1 + row.m) // 6
        quasi = [w for w in enumerate_words(M) if is_quasi_stirling(w)]
        assert len(quasi) == 30 == special_counts(M).total
        assert sum(1 for w in quasi if des(w) == 3) == 16 == special_counts(M).top_des


def test_4_uniform_top_coefficient():
    with criterion(4, "{1^3, 2^3}: 5 words with des 2", 1):
        M = MultisetSpec((3, 3))
        count = sum(1 for w in enumerate_words(M) if is_quasi_stirling(w) and des(w) == 2)
        assert count == 5 == special_counts(M).top_des


def test_5_tree_word_bijection():
    with criterion(5, "tree/word bijection for every M with K <= 7 and the spot check", 120):
        for M in multisets_up_to(7):
            report = check_phi(M)
            assert report.passed, (M, report.failures[:3])
        spot = spot_check(WORKED_WORD)
        assert spot.passed and spot.triple == (5, 2, 5)
        assert spot.tree == "0(2,7(7(1)),5(5(6,3(3)),5(4)))"


def test_6_code_bijections():
    with criterion(6, "|BT| = |T*| = |P| = closed form, psi/theta round-trips, code example",
                   120):
        for mult in [(1,), (1, 2), (2, 2), (1, 2, 1)]:
            M = MultisetSpec(mult)
            for m in range(5):
                report = check_codes(M, m)
                assert report.passed, (M, m, report.failures[:3])
                assert report.code_pairs == m ** (M.n - 1) * math.comb(
                    M.K - M.n + m, M.K - M.n + 1)
        M = MultisetSpec((1, 1, 2, 1, 3, 1, 2))
        code = parse_code_pair(WORKED_P, WORKED_S)
        B = parse_block_tree(WORKED_BLOCK_TREE)
        assert theta(B, M) == code
        assert theta_inverse(code, M) == B


def test_7_binomial_sum():
    with criterion(7, "sum of l*C(n+m-l-1, n-1) equals C(n+m, n+1) for n, m <= 30", 1):
        assert all(lemma_sum_identity(n, m) for n in range(1, 31) for m in range(1, 31))


def test_8_roots_shape_reduction():
    with criterion(8, "reduction, real roots <= 0, log-concave, unimodal for K <= 8", 300):
        for M in multisets_up_to(8):
            report = analyze(M)
            assert report.reduction.equal, M
            assert report.roots.all_real and report.roots.all_nonpositive, M
            assert report.log_concave and report.unimodal, M


def test_9_eulerian():
    with criterion(9, "Eulerian series sum m^n t^m for n <= 8, m <= 12", 10):
        for n in range(1, 9):
            series = expand_series(eulerian_polynomial(n), n, 12)
            assert series.coeffs == tuple(m ** n for m in range(13))
