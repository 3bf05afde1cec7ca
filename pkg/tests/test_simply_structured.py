from fractions import Fraction

import pytest
from hypothesis import given, settings

from helpers import K2, K13, P5, trees
from treeskel.errors import DomainError, NotAnEigenvalueError
from treeskel.graph import parse_graph
from treeskel.harness import gadget_stack
from treeskel.linalg import eigenspace_basis, multiplicity, rank, verify_eigenvector
from treeskel.oracles import has_simple_basis_bruteforce, pm1_eigenvectors
from treeskel.simply_structured import (
    flip_signs,
    has_simply_structured_basis,
    is_class_C,
    simply_structured_basis,
)
from treeskel.trees import unlabeled_trees

S221 = parse_graph("m p1\np1 p2\nm q1\nq1 q2\nm s")
T6 = parse_graph("z r\nz w\nz y\ny u0\ny u1")
# smallest tree (9 vertices) whose eigenvalue 1 has no {0,1,-1} basis; found by search
NO_SIMPLE = parse_graph("0 1\n0 5\n1 2\n2 3\n2 4\n5 6\n6 7\n6 8")


def test_k2_member():
    res = is_class_C(K2)
    assert res.member and res.certificate == (1, 1)
    assert res.trace.steps == () and set(res.trace.terminal) == {"a", "b"}


def test_t6_member():
    res = is_class_C(T6)
    assert res.member
    cert = dict(zip(T6.vertices, res.certificate))
    assert {v for v, a in cert.items() if a == 1} == {"z", "r", "w"}
    assert {v for v, a in cert.items() if a == -1} == {"y", "u0", "u1"}
    (step,) = res.trace.steps
    assert step.removed[2] == "y"


def test_p6_non_member():
    p6 = parse_graph("a b\nb c\nc d\nd e\ne f")
    res = is_class_C(p6)
    assert not res.member and res.trace is None and res.certificate is None
    assert multiplicity(p6, 1) == 0


def test_gadget_stacks_are_members():
    for n in range(2, 15, 4):
        t = gadget_stack(n)
        assert len(t) == n and is_class_C(t).member
    with pytest.raises(ValueError):
        gadget_stack(8)


def test_class_c_matches_oracle_on_all_small_trees():
    for n in range(1, 11):
        for t in unlabeled_trees(n):
            res = is_class_C(t)
            assert res.member == bool(pm1_eigenvectors(t, 1))
            if res.member:
                assert n % 4 == 2 and multiplicity(t, 1) == 1
                assert verify_eigenvector(t, 1, res.certificate)


def test_fixture_bases():
    assert simply_structured_basis(P5, 1) == [(1, 1, 0, -1, -1)]
    basis = simply_structured_basis(S221, 1)
    assert len(basis) == 1 and set(basis[0]) <= {0, 1, -1}
    assert verify_eigenvector(S221, 1, basis[0])
    k = simply_structured_basis(K13, 0)
    assert len(k) == 2 and all(set(x) <= {0, 1, -1} for x in k)


def test_minus_one_is_flipped():
    plus = simply_structured_basis(S221, 1)
    minus = simply_structured_basis(S221, -1)
    assert minus == [flip_signs(S221, x) for x in plus]
    for x in minus:
        assert verify_eigenvector(S221, -1, x)
    v = dict(zip(S221.vertices, minus[0]))
    assert v["p1"] == -v["p2"] and v["p1"] != 0


def test_no_simple_basis_witness():
    assert multiplicity(NO_SIMPLE, 1) == 1
    assert not has_simply_structured_basis(NO_SIMPLE, 1)
    assert not has_simply_structured_basis(NO_SIMPLE, -1)
    assert not has_simple_basis_bruteforce(NO_SIMPLE, 1)
    with pytest.raises(DomainError):
        simply_structured_basis(NO_SIMPLE, 1)


def test_domain_errors():
    with pytest.raises(DomainError):
        has_simply_structured_basis(P5, 2)
    with pytest.raises(NotAnEigenvalueError):
        simply_structured_basis(parse_graph("a b\nb c\nc d"), 1)
    assert has_simply_structured_basis(K13, 0)


@settings(max_examples=80, deadline=None)
@given(trees(2, 14))
def test_basis_properties(t):
    for lam in (0, 1, -1):
        if multiplicity(t, lam) == 0:
            continue
        if not has_simply_structured_basis(t, lam):
            continue
        basis = simply_structured_basis(t, lam)
        assert len(basis) == rank(basis) == multiplicity(t, lam)
        for x in basis:
            assert set(x) <= {0, 1, -1}
            assert verify_eigenvector(t, lam, x)


@settings(max_examples=40, deadline=None)
@given(trees(2, 10))
def test_characterisation_matches_bruteforce(t):
    if multiplicity(t, 1):
        assert has_simply_structured_basis(t, 1) == has_simple_basis_bruteforce(t, 1)


@settings(max_examples=60, deadline=None)
@given(trees(1, 14))
def test_flip_maps_eigenspaces(t):
    for x in eigenspace_basis(t, 1):
        assert verify_eigenvector(t, -1, flip_signs(t, x))
