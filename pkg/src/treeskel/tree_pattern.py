"""Tree pattern matrices: supports, the component-count nullity formula,
and branch rescaling of null vectors from the 0/1 pattern to weighted matrices."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .graph import Forest, component_sets, require_tree
from .linalg import (
    TreePatternMatrix,
    adjacency_matrix,
    as_vector,
    eigenspace_basis,
    verify_eigenvector,
)
from .trees import random_tree

WEIGHTS = tuple(Fraction(w) for w in (1, -1, 2, -2, 3, -3)) + (Fraction(1, 2), Fraction(-1, 2))


@dataclass(frozen=True)
class PatternSupport:
    lam: Fraction
    support: frozenset
    induced_components: int
    outside_adjacent: int


def pattern_graph(m: TreePatternMatrix) -> Forest:
    return m.pattern


def pattern_support(m: TreePatternMatrix, lam) -> PatternSupport:
    lam = Fraction(lam)
    f = m.pattern
    basis = eigenspace_basis(m, lam)
    support = frozenset(
        v for i, v in enumerate(f.vertices) if any(x[i] != 0 for x in basis.vectors)
    )
    comps = len(component_sets(f.induced(support)))
    outside = {w for v in support for w in f.neighbors(v) if w not in support}
    return PatternSupport(lam, support, comps, len(outside))


def nylen_nullity(m: TreePatternMatrix, lam=0) -> int:
    """Eigenspace dimension predicted from the support alone: components of
    the induced support minus vertices adjacent to it from outside."""
    require_tree(m.pattern)
    ps = pattern_support(m, lam)
    return ps.induced_components - ps.outside_adjacent


def transfer_null_pattern(m: TreePatternMatrix, v) -> tuple:
    """Turn a null vector of the pattern's adjacency matrix into one of ``m``.

    Breadth-first from the first vertex of each component, the branches
    hanging below each vertex are rescaled so that the vertex's row of ``m``
    sums to zero. The zero pattern of ``v`` is kept.
    """
    if not m.has_zero_diagonal():
        raise DomainError("branch rescaling needs a zero diagonal")
    f = m.pattern
    v = as_vector(v)
    if len(v) != m.order:
        raise ValueError("vector length does not match the matrix order")
    if not verify_eigenvector(adjacency_matrix(f), 0, v):
        raise DomainError("v is not a non-zero null vector of the pattern's adjacency matrix")
    idx = {u: i for i, u in enumerate(f.vertices)}
    orig = dict(zip(f.vertices, v))
    scale = {}  # cumulative factor applied to the branch containing a vertex
    for comp in component_sets(f):
        root = comp[0]
        scale[root] = Fraction(1)
        parent = {root: None}
        queue = deque([root])
        while queue:
            z = queue.popleft()
            kids = [c for c in f.neighbors(z) if c != parent[z]]
            for c in kids:
                parent[c] = z
            p = parent[z]
            row = m.entries[idx[z]]
            if p is not None and orig[p] != 0:
                tau = row[idx[p]] * scale[p] / scale[z]
            else:
                # no parent contribution: the children's pattern values already sum to 0
                tau = Fraction(1)
            for c in kids:
                factor = tau / row[idx[c]] if orig[c] != 0 else Fraction(1)
                scale[c] = scale[z] * factor
                queue.append(c)
    out = tuple(orig[u] * scale[u] for u in f.vertices)
    if not verify_eigenvector(m, 0, out):
        raise DomainError("rescaling failed; is v really a pattern null vector?")
    return out


def random_pattern_matrix(n: int, rng: random.Random, diagonal: bool | None = None) -> TreePatternMatrix:
    """A random symmetric tree pattern matrix with weights from WEIGHTS.

    ``diagonal`` forces a zero (False) or random non-zero (True) diagonal;
    None draws each diagonal entry as zero or a random weight.
    """
    t = random_tree(n, rng)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for a, b in t.edges:
        i, j = t.index(a), t.index(b)
        rows[i][j] = rows[j][i] = rng.choice(WEIGHTS)
    if diagonal is None:
        diagonal = rng.random() < 0.5
    if diagonal:
        for i in range(n):
            rows[i][i] = rng.choice((Fraction(0),) + WEIGHTS)
    return TreePatternMatrix(t.vertices, tuple(tuple(r) for r in rows))
