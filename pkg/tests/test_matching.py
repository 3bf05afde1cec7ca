import networkx as nx
import pytest
from hypothesis import given, settings

from helpers import DOUBLE_STAR, K13, P5, to_nx, trees
from treeskel.graph import Forest, parse_graph
from treeskel.linalg import eigenspace_basis, multiplicity, rank
from treeskel.matching import classify_vertices, kernel_basis, maximum_matching, matching_number
from treeskel.oracles import deletion_classification, matching_number_bruteforce


def _is_matching(f, m):
    covered = [v for e in m for v in e]
    return len(covered) == len(set(covered)) and all(f.has_edge(*tuple(e)) for e in m)


def test_star_classification():
    cls = classify_vertices(K13)
    assert len(cls.matching) == 1
    assert cls.K == {"l1", "l2", "l3"} and cls.N == {"c"}
    assert not cls.forced_edges
    assert kernel_basis(K13, cls) == [(0, -1, 1, 0), (0, -1, 0, 1)]


def test_p4_has_forced_edges():
    p4 = parse_graph("a b\nb c\nc d")
    cls = classify_vertices(p4)
    assert cls.K == set() and len(cls.forced_edges) == 2
    assert kernel_basis(p4) == []


def test_p5_kernel():
    cls = classify_vertices(P5)
    assert cls.K == {"a", "c", "e"} and cls.N == {"b", "d"}
    (x,) = kernel_basis(P5, cls)
    assert set(x) <= {0, 1, -1} and x[1] == x[3] == 0 and x[0] == -x[2] == x[4]


def test_double_star():
    cls = classify_vertices(DOUBLE_STAR)
    assert cls.N == {"w1", "w2"} and not cls.forced_edges
    assert len(kernel_basis(DOUBLE_STAR)) == 2


def test_empty_and_isolated():
    f = Forest(["a", "b"])
    assert maximum_matching(f) == frozenset()
    assert classify_vertices(f).K == {"a", "b"}
    assert kernel_basis(f) == [(1, 0), (0, 1)]


def test_removed_edge():
    p4 = parse_graph("a b\nb c\nc d")
    assert len(maximum_matching(p4, removed_edge=frozenset("bc"))) == 2
    assert len(maximum_matching(p4, removed_edge=frozenset("ab"))) == 1


@settings(max_examples=100, deadline=None)
@given(trees(1, 14))
def test_matching_is_maximum(t):
    m = maximum_matching(t)
    assert _is_matching(t, m)
    assert len(m) == len(nx.max_weight_matching(to_nx(t), maxcardinality=True))


@settings(max_examples=60, deadline=None)
@given(trees(1, 10))
def test_matching_number_matches_bruteforce(t):
    assert matching_number(t) == matching_number_bruteforce(t)


@settings(max_examples=100, deadline=None)
@given(trees(1, 12))
def test_classification_agrees_with_deletion(t):
    cls = classify_vertices(t)
    K, forced = deletion_classification(t)
    assert cls.K == K
    assert cls.forced_edges == forced


@settings(max_examples=100, deadline=None)
@given(trees(1, 14))
def test_kernel_basis_properties(t):
    cls = classify_vertices(t)
    vecs = kernel_basis(t, cls)
    nullity = multiplicity(t, 0)
    assert nullity == len(t) - 2 * len(cls.matching) == len(vecs)
    if vecs:
        assert rank(vecs) == nullity
    for x in vecs:
        assert set(x) <= {0, 1, -1}
        for v in t.vertices:
            assert sum(x[t.index(w)] for w in t.neighbors(v)) == 0
    zero = {v for i, v in enumerate(t.vertices) if all(b[i] == 0 for b in eigenspace_basis(t, 0))}
    assert zero == cls.N
    # missable vertices are pairwise non-adjacent
    assert not any(u in cls.K and v in cls.K for u, v in t.edges)


@settings(max_examples=50, deadline=None)
@given(trees(2, 12))
def test_classification_independent_of_matching_choice(t):
    base = classify_vertices(t)
    for e in t.edges:
        other = maximum_matching(t, removed_edge=frozenset(e))
        if len(other) == len(base.matching):
            assert classify_vertices(t, other).K == base.K
