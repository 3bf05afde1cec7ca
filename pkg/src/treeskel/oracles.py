"""Brute-force oracles, kept independent of the constructive code paths."""

from __future__ import annotations

import itertools

import numpy as np

from .graph import Forest
from .linalg import as_matrix, rank
from .matching import matching_number, maximum_matching

BRUTE_FORCE_MAX_N = 20


def _adjacency_int(t: Forest) -> np.ndarray:
    a = np.zeros((len(t), len(t)), dtype=np.int64)
    for u, v in t.edges:
        i, j = t.index(u), t.index(v)
        a[i, j] = a[j, i] = 1
    return a


def _sign_matrix(n: int) -> np.ndarray:
    """All +-1 vectors of length n with first entry +1, one per row."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    codes = np.arange(1 << (n - 1), dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n - 1, dtype=np.int64)) & 1
    return np.hstack([np.ones((len(codes), 1), dtype=np.int64), 1 - 2 * bits])


def pm1_eigenvectors(t: Forest, lam: int = 1) -> list[tuple]:
    """Every {1, -1} eigenvector (first entry +1) found by exhaustive enumeration."""
    n = len(t)
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"exhaustive enumeration limited to n <= {BRUTE_FORCE_MAX_N}")
    x = _sign_matrix(n)
    ok = np.all(x @ _adjacency_int(t) == lam * x, axis=1)
    return [tuple(int(a) for a in row) for row in x[ok]]


def simple_eigenvectors(t: Forest, lam: int) -> list[tuple]:
    """Every {0, 1, -1} eigenvector whose first non-zero entry is +1 (3**n search)."""
    n = len(t)
    if n > 13:
        raise ValueError("3**n enumeration limited to n <= 13")
    a = _adjacency_int(t)
    out = []
    digits = np.array(list(itertools.product((0, 1, -1), repeat=n)), dtype=np.int64)
    nz = digits != 0
    first = digits[np.arange(len(digits)), np.argmax(nz, axis=1)]
    keep = nz.any(axis=1) & (first == 1)
    digits = digits[keep]
    ok = np.all(digits @ a == lam * digits, axis=1)
    for row in digits[ok]:
        out.append(tuple(int(v) for v in row))
    return out


def has_simple_basis_bruteforce(t: Forest, lam: int) -> bool:
    """Do the {0, 1, -1} eigenvectors span the whole eigenspace?"""
    vecs = simple_eigenvectors(t, lam)
    m = as_matrix(t)
    dim = m.order - rank(m.shifted(lam))
    return dim > 0 and bool(vecs) and rank(vecs) == dim


def always_zero_by_rank(m, lam) -> set:
    """Vertices where the eigenspace vanishes, via row-space membership.

    For a symmetric matrix the eigenspace is orthogonal to the row space of
    M - lam*I, so e_v lies in that row space iff every eigenvector vanishes at v.
    """
    m = as_matrix(m)
    rows = m.shifted(lam)
    r = rank(rows)
    out = set()
    for i, v in enumerate(m.vertex_order):
        e = [0] * m.order
        e[i] = 1
        if rank(rows + [e]) == r:
            out.add(v)
    return out


def deletion_classification(f: Forest):
    """(K, forced edges) by deletion: v is missable iff deleting it keeps the
    matching number; an edge is forced iff deleting it drops the matching number."""
    nu = matching_number(f)
    K = {v for v in f.vertices if matching_number(f.induced(set(f.vertices) - {v})) == nu}
    forced = {
        frozenset(e)
        for e in f.edges
        if len(maximum_matching(f, removed_edge=frozenset(e))) < nu
    }
    return K, forced


def matching_number_bruteforce(f: Forest) -> int:
    """Largest pairwise disjoint edge subset, by exhaustive search (small forests)."""
    edges = list(f.edges)
    best = 0

    def go(i, used, size):
        nonlocal best
        best = max(best, size)
        if i == len(edges) or size + (len(edges) - i) <= best:
            return
        u, v = edges[i]
        if u not in used and v not in used:
            go(i + 1, used | {u, v}, size + 1)
        go(i + 1, used, size)

    go(0, frozenset(), 0)
    return best
