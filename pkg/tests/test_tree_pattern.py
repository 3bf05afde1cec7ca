import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import K13, Q
from treeskel.errors import DomainError
from treeskel.graph import parse_graph
from treeskel.linalg import TreePatternMatrix, adjacency_matrix, multiplicity, rank, verify_eigenvector
from treeskel.matching import kernel_basis
from treeskel.skeleton import multiplicity_via_matching
from treeskel.tree_pattern import (
    WEIGHTS,
    nylen_nullity,
    pattern_graph,
    pattern_support,
    random_pattern_matrix,
    transfer_null_pattern,
)


def M(order, rows):
    return TreePatternMatrix(tuple(order), tuple(tuple(Fraction(x) for x in r) for r in rows))


WP3 = M("abc", [[0, 2, 0], [3, 0, 1], [0, 5, 0]])
# weighted P5 whose support at 1 is everything, while the plain path misses the middle vertex
WP5 = M("abcde", [
    [0, -2, 0, 0, 0],
    [-2, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [0, 0, 1, 0, Fraction(-1, 2)],
    [0, 0, 0, Fraction(-1, 2), 0],
])


def test_pattern_graph():
    assert pattern_graph(WP3).edge_set() == {frozenset("ab"), frozenset("bc")}
    assert pattern_graph(M("ab", [[1, 0], [0, 1]])).edges == ()
    p3 = parse_graph("a b\nb c")
    assert pattern_graph(adjacency_matrix(p3)) == p3


def test_nylen_fixtures():
    ps = pattern_support(WP3, 0)
    assert ps.support == {"a", "c"} and ps.induced_components == 2 and ps.outside_adjacent == 1
    assert nylen_nullity(WP3, 0) == 1 == multiplicity(WP3, 0)
    assert nylen_nullity(adjacency_matrix(K13), 0) == 2
    assert nylen_nullity(adjacency_matrix(parse_graph("a b\nb c\nc d")), 1) == 0
    with pytest.raises(Exception):
        nylen_nullity(M("ab", [[0, 0], [0, 0]]), 0)


def test_transfer_fixtures():
    assert transfer_null_pattern(WP3, (1, 0, -1)) == Q(1, 0, -3)
    p3 = adjacency_matrix(parse_graph("a b\nb c"))
    assert transfer_null_pattern(p3, (1, 0, -1)) == Q(1, 0, -1)
    # star, order c l1 l2 l3; centre row weights 1, 2, 4, leaf rows weight 1
    star = M(["c", "l1", "l2", "l3"], [[0, 1, 2, 4], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]])
    out = transfer_null_pattern(star, (0, 1, -1, 0))
    assert out == Q(0, 1, Fraction(-1, 2), 0)
    assert verify_eigenvector(star, 0, out)


def test_transfer_preconditions():
    with pytest.raises(DomainError):
        transfer_null_pattern(M("ab", [[1, 1], [1, 0]]), (1, 0))
    with pytest.raises(DomainError):
        transfer_null_pattern(WP3, (1, 1, 1))
    with pytest.raises(ValueError):
        transfer_null_pattern(WP3, (1, 0))


def test_supports_differ_away_from_zero():
    a = adjacency_matrix(WP5.pattern)
    assert WP5.is_value_symmetric()
    assert pattern_support(WP5, 1).support == {"a", "b", "c", "d", "e"}
    assert pattern_support(a, 1).support == {"a", "b", "d", "e"}
    assert nylen_nullity(WP5, 1) == multiplicity(WP5, 1) == 1


def test_random_matrix_is_symmetric_with_allowed_weights():
    rng = random.Random(1)
    for _ in range(50):
        m = random_pattern_matrix(rng.randint(1, 10), rng)
        assert m.is_value_symmetric() and m.pattern.is_tree()
        for u, v in m.pattern.edges:
            assert m.entries[m.pattern.index(u)][m.pattern.index(v)] in WEIGHTS
    assert random_pattern_matrix(5, rng, diagonal=False).has_zero_diagonal()


seeds = st.integers(0, 10**6)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_nylen_formula(seed):
    rng = random.Random(seed)
    m = random_pattern_matrix(rng.randint(1, 10), rng)
    for lam in range(-4, 5):
        dim = multiplicity(m, lam)
        if lam == 0 or dim:
            assert nylen_nullity(m, lam) == dim
        if dim:
            assert multiplicity_via_matching(m, lam) == dim


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_zero_diagonal_transfer(seed):
    rng = random.Random(seed)
    m = random_pattern_matrix(rng.randint(1, 10), rng, diagonal=False)
    a = adjacency_matrix(m.pattern)
    assert pattern_support(m, 0).support == pattern_support(a, 0).support
    kb = kernel_basis(m.pattern)
    out = [transfer_null_pattern(m, x) for x in kb]
    for x, y in zip(kb, out):
        assert verify_eigenvector(m, 0, y)
        assert [a != 0 for a in x] == [b != 0 for b in y]
    if kb:
        assert rank(out) == len(kb)
