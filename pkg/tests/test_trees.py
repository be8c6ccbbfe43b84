from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import WORKED_TREE, WORKED_WORD, WORKED_M
from oracles import all_words, des_counts, descents_plus_one, has_abab
from qstirling.combinatorics import (NEG_INF, POS_INF, MultisetSpec, des, ends, enumerate_words,
                                     is_quasi_stirling, multisets_up_to)
from qstirling.errors import ParseError, PatternError, ValidationError
from qstirling.trees import (ONE_VERTEX, cdes_tree, cdes_vertex, enumerate_trees, parse_tree,
                             phi, phi_inverse, tree_ends, tree_polynomial, tree_violation,
                             validate_tree)


def test_parse_and_print_round_trip():
    T = parse_tree(WORKED_TREE)
    assert T.to_text() == WORKED_TREE
    assert T.size() == WORKED_M.K + 1
    assert parse_tree("0") == ONE_VERTEX


@pytest.mark.parametrize("text", ["", "0(", "0(1,", "0()", "0(1)x", "0(a)", "0(1|2)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_tree(text)


def test_worked_tree_statistics(worked_tree):
    assert validate_tree(WORKED_M, worked_tree)
    assert cdes_tree(worked_tree) == 5
    assert tree_ends(worked_tree) == (2, 5)
    assert phi(worked_tree) == WORKED_WORD
    assert phi_inverse(WORKED_WORD, WORKED_M) == worked_tree


def test_one_vertex_tree():
    assert cdes_tree(ONE_VERTEX) == 1
    assert tree_ends(ONE_VERTEX) == (POS_INF, NEG_INF)
    assert phi(ONE_VERTEX) == ()
    assert phi_inverse(()) == ONE_VERTEX


@pytest.mark.parametrize("text, expected", [
    ("0(1,2)", 1),
    ("0(2,1)", 2),
    ("3(5,4)", 2),
    ("3(1,2)", 1),
    ("4", 0),
])
def test_cdes_vertex(text, expected):
    assert cdes_vertex(parse_tree(text)) == expected


@pytest.mark.parametrize("text, problem", [
    ("1(1)", "(ii)"),
    ("0(1(2))", "(iii)"),
    ("0(1(1),2(2))", "children"),
    ("0(1)", "labels differ"),
    ("0(2(2),2(2))", "more than one"),
    ("0(9(9),1)", "(i)"),
])
def test_tree_violations(text, problem):
    M = MultisetSpec((1, 2))
    T = parse_tree(text)
    reason = tree_violation(M, T)
    assert reason is not None and problem in reason


def test_small_tree_families():
    M = MultisetSpec((1, 2))
    texts = sorted(T.to_text() for T in enumerate_trees(M))
    assert texts == ["0(1,2(2))", "0(2(2(1)))", "0(2(2),1)"]
    assert [cdes_tree(parse_tree(t)) for t in texts] == [1, 2, 2]


@pytest.mark.parametrize("M", multisets_up_to(7), ids=str)
def test_tree_count_and_distribution_match_words(M):
    trees = list(enumerate_trees(M))
    assert len(set(trees)) == len(trees)
    assert all(validate_tree(M, T) for T in trees)
    quasi = [w for w in all_words(M.mult) if not has_abab(w)]
    assert len(trees) == len(quasi)
    assert dict(Counter(cdes_tree(T) for T in trees)) == des_counts(quasi)
    assert dict(Counter(tree_ends(T) for T in trees)) == dict(Counter((w[0], w[-1])
                                                                    for w in quasi))


@pytest.mark.parametrize("M", multisets_up_to(7), ids=str)
def test_phi_bijection(M):
    words = {w for w in enumerate_words(M) if is_quasi_stirling(w)}
    images = set()
    for T in enumerate_trees(M):
        w = phi(T)
        assert w in words
        assert (cdes_tree(T), *tree_ends(T)) == (descents_plus_one(w), *ends(w))
        assert phi_inverse(w, M) == T
        images.add(w)
    assert images == words


def test_tree_polynomial():
    M = MultisetSpec((1, 2, 1))
    assert tree_polynomial(M).coeffs == (0, 1, 7, 4)


def test_phi_inverse_rejects_bad_words():
    with pytest.raises(PatternError):
        phi_inverse((1, 2, 1, 2))
    with pytest.raises(ValidationError):
        phi_inverse((1, 2, 2), MultisetSpec((2, 1)))


def test_phi_rejects_malformed_tree():
    with pytest.raises(ValidationError):
        phi(parse_tree("1(2)"))
    with pytest.raises(ValidationError):
        phi(parse_tree("0(1(2))"))


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=12))
def test_phi_round_trip_on_random_words(w):
    w = tuple(w)
    if has_abab(w):
        with pytest.raises(PatternError):
            phi_inverse(w)
        return
    T = phi_inverse(w)
    assert phi(T) == w
    assert cdes_tree(T) == des(w)
    assert tree_ends(T) == ends(w)
