"""Skeleton forests of tree eigenspaces.

Every function accepts either a :class:`~treeskel.graph.Forest` (its
adjacency matrix is used) or a :class:`~treeskel.linalg.TreePatternMatrix`;
the summation rule at a vertex is then the weighted row of the matrix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InternalConsistencyError, NotAnEigenvalueError
from .graph import Forest, component_sets, contract_subgraphs
from .linalg import (
    RationalBasis,
    TreePatternMatrix,
    as_matrix,
    as_vector,
    eigenspace_basis,
    multiplicity,
    null_space,
    adjacency_matrix,
    normalize,
    verify_eigenvector,
)
from .matching import classify_vertices, maximum_matching


@dataclass(frozen=True)
class Contracted:
    members: tuple  # original vertices, in source vertex order


@dataclass(frozen=True)
class Boundary:
    vertex: str


@dataclass(frozen=True)
class SupportReport:
    lam: Fraction
    always_zero: frozenset
    support: frozenset
    boundary: frozenset
    eigen_components: tuple  # tuples of vertices, by first vertex
    basis: RationalBasis = field(repr=False, compare=False)


@dataclass(frozen=True)
class SkeletonForest:
    forest: Forest
    kind: Mapping[str, object]  # label -> Contracted | Boundary
    # (boundary label, contracted label) -> the source vertex of the component
    # adjacent to that boundary vertex
    attachment: Mapping[tuple, str] = field(repr=False, compare=False)

    def contracted(self) -> list[str]:
        return [v for v in self.forest.vertices if isinstance(self.kind[v], Contracted)]

    def boundary(self) -> list[str]:
        return [v for v in self.forest.vertices if isinstance(self.kind[v], Boundary)]

    def is_contracted(self, v: str) -> bool:
        return isinstance(self.kind[v], Contracted)

    def tags(self) -> dict:
        return {v: "C" if self.is_contracted(v) else "B" for v in self.forest.vertices}

    def to_dot(self) -> str:
        lines = ["graph skeleton {"]
        for v in self.forest.vertices:
            k = self.kind[v]
            if isinstance(k, Contracted):
                members = ",".join(k.members)
                lines.append(f'  "{v}" [shape=box, label="{v}\\n{{{members}}}"];')
            else:
                lines.append(f'  "{v}" [shape=circle, style=filled, label="{v}"];')
        for u, v in self.forest.edges:
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MetaSkeleton:
    tree: Forest  # S' = T contracted by the components of T minus the boundary
    skeleton_vertices: frozenset
    non_eigen_vertices: frozenset  # X
    origin: Mapping[str, object]


def _coerce(t):
    m = as_matrix(t)
    return m, m.pattern


def _boundary_of(f: Forest, zero: set) -> set:
    return {w for w in zero if any(u not in zero for u in f.neighbors(w))}


def support_report(t, lam, basis: RationalBasis | None = None) -> SupportReport:
    m, f = _coerce(t)
    lam = Fraction(lam)
    if basis is None:
        basis = eigenspace_basis(m, lam)
    vecs = basis.vectors
    zero = {v for i, v in enumerate(f.vertices) if all(x[i] == 0 for x in vecs)}
    support = frozenset(f.vertices) - zero
    comps = component_sets(f.induced(support))
    return SupportReport(
        lam,
        frozenset(zero),
        support,
        frozenset(_boundary_of(f, zero)),
        tuple(tuple(c) for c in comps),
        basis,
    )


def _build(f: Forest, comps, boundary) -> SkeletonForest:
    keep = set(boundary).union(*map(set, comps)) if comps else set(boundary)
    res = contract_subgraphs(f.induced(keep), comps)
    owner = {}
    kind = {}
    for label, o in res.origin.items():
        if isinstance(o, frozenset):
            kind[label] = Contracted(tuple(f.sort_key(o)))
            for v in o:
                owner[v] = label
        else:
            kind[label] = Boundary(o)
    attachment = {}
    for w in boundary:
        for u in f.neighbors(w):
            if u in owner:
                attachment[(w, owner[u])] = u
    return SkeletonForest(res.contracted, kind, attachment)


def x_skeleton(t, x, lam) -> SkeletonForest:
    """Skeleton of a single eigenvector: contract the components where x is non-zero."""
    m, f = _coerce(t)
    x = as_vector(x)
    if not verify_eigenvector(m, lam, x):
        raise ValueError("x is not an eigenvector for the given value")
    zero = {v for i, v in enumerate(f.vertices) if x[i] == 0}
    comps = component_sets(f.induced(v for v in f.vertices if v not in zero))
    return _build(f, comps, _boundary_of(f, zero))


def skeleton(t, lam, report: SupportReport | None = None) -> SkeletonForest:
    """The skeleton merged over the whole eigenspace for ``lam``."""
    m, f = _coerce(t)
    report = report or support_report(m, lam)
    if not report.support:
        raise NotAnEigenvalueError(f"{lam} is not an eigenvalue")
    return _build(f, [list(c) for c in report.eigen_components], report.boundary)


def meta_skeleton(t, lam, report: SupportReport | None = None) -> MetaSkeleton:
    m, f = _coerce(t)
    lam = Fraction(lam)
    report = report or support_report(m, lam)
    if not report.support:
        raise NotAnEigenvalueError(f"{lam} is not an eigenvalue")
    rest = [v for v in f.vertices if v not in report.boundary]
    parts = component_sets(f.induced(rest))
    res = contract_subgraphs(f, parts)
    eigen = {frozenset(c) for c in report.eigen_components}
    X = set()
    skel = set()
    for label, o in res.origin.items():
        if isinstance(o, frozenset) and o not in eigen:
            if multiplicity(m.submatrix(o), lam) != 0:
                raise InternalConsistencyError(
                    f"component {sorted(o)} outside the support has eigenvalue {lam}"
                )
            X.add(label)
        else:
            skel.add(label)
    return MetaSkeleton(res.contracted, frozenset(skel), frozenset(X), res.origin)


def multiplicity_via_matching(t, lam, sk: SkeletonForest | None = None) -> int:
    """Vertices of the skeleton missed by a maximum matching."""
    sk = sk or skeleton(t, lam)
    return len(sk.forest) - 2 * len(maximum_matching(sk.forest))


def skeleton_violations(sk: SkeletonForest) -> list[str]:
    """Structural properties every skeleton must satisfy; empty when all hold."""
    f = sk.forest
    out = []
    for v in f.leaves():
        if not sk.is_contracted(v):
            out.append(f"leaf {v} is a boundary vertex")
    nu = len(maximum_matching(f))
    for u, v in f.edges:
        if sk.is_contracted(u) and sk.is_contracted(v):
            out.append(f"edge {u}-{v} joins two contracted vertices")
        elif not (sk.is_contracted(u) or sk.is_contracted(v)):
            # allowed by the induced definition, but must stay out of every maximum matching
            rest = f.induced(x for x in f.vertices if x not in (u, v))
            if len(maximum_matching(rest)) == nu - 1:
                out.append(f"boundary edge {u}-{v} lies in a maximum matching")
    for w in sk.boundary():
        if sum(sk.is_contracted(u) for u in f.neighbors(w)) < 2:
            out.append(f"boundary vertex {w} touches fewer than two components")
    cls = classify_vertices(f)
    for e in sorted(sorted(e) for e in cls.forced_edges):
        out.append(f"edge {e[0]}-{e[1]} lies in every maximum matching")
    if set(cls.K) != set(sk.contracted()):
        out.append("missable vertices differ from contracted vertices")
    return out


def boundary_edges(sk: SkeletonForest) -> list[tuple]:
    """Skeleton edges between two boundary vertices (adjacent always-zero vertices)."""
    return [(u, v) for u, v in sk.forest.edges if not (sk.is_contracted(u) or sk.is_contracted(v))]


def skeleton_fixed_point_holds(sk: SkeletonForest) -> bool:
    """The zero-skeleton of a skeleton is itself, with no real contraction."""
    inner = skeleton(sk.forest, 0)
    if len(inner.forest) != len(sk.forest):
        return False
    image = {}
    for label, k in inner.kind.items():
        if isinstance(k, Contracted):
            if len(k.members) != 1 or not sk.is_contracted(k.members[0]):
                return False
            image[label] = k.members[0]
        else:
            if sk.is_contracted(k.vertex):
                return False
            image[label] = k.vertex
    return inner.forest.relabel(image) == sk.forest


# -- eigenvector transfer -------------------------------------------------


def _component_vectors(m: TreePatternMatrix, sk: SkeletonForest, lam) -> dict:
    """Zero-free eigenvector of each contracted component, first entry 1."""
    out = {}
    for c in sk.contracted():
        members = sk.kind[c].members
        vecs = null_space(m.submatrix(members).shifted(lam), len(members))
        if len(vecs) != 1 or not all(vecs[0]):
            raise InternalConsistencyError(f"component {members} lacks a zero-free eigenvector")
        out[c] = dict(zip(members, normalize(vecs[0])))
    return out


def _search(sk: SkeletonForest, start_values: dict, assign):
    """Brother search, one group of brothers at a time.

    ``start_values`` maps chosen start vertices to their value; ``assign(w, v,
    kids)`` returns values for the contracted neighbours ``kids`` of boundary
    vertex ``w`` reached from the visited contracted vertex ``v``.
    """
    f = sk.forest
    contracted = sk.contracted()
    values = {c: Fraction(0) for c in contracted}
    visited = set()
    # boundary-boundary edges carry no constraint (both ends are zero), so
    # the search runs over groups of brothers rather than skeleton components
    for s in contracted:
        if s in visited or s not in start_values:
            continue
        values[s] = start_values[s]
        visited.add(s)
        done = set()
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in f.neighbors(v):
                if w in done or sk.is_contracted(w):
                    continue
                done.add(w)
                kids = [c for c in f.neighbors(w) if c != v and sk.is_contracted(c)]
                values.update(assign(w, v, kids, values))
                visited.update(kids)
                queue.extend(kids)
    return values


def project_eigenvector(t, lam, b, sk: SkeletonForest | None = None) -> tuple:
    """Map an eigenvector of T to a null vector of its skeleton.

    The result is non-zero exactly on the contracted vertices whose
    components carry non-zero entries of ``b``; it is indexed by the skeleton
    vertex order and takes value 1 at its start vertex.
    """
    m, f = _coerce(t)
    lam = Fraction(lam)
    b = as_vector(b)
    if not verify_eigenvector(m, lam, b):
        raise ValueError("b is not an eigenvector for the given value")
    sk = sk or skeleton(m, lam)
    row = {v: i for i, v in enumerate(f.vertices)}
    val = dict(zip(f.vertices, b))
    nonzero = {c for c in sk.contracted() if val[sk.kind[c].members[0]] != 0}

    def contrib(w, c):
        u = sk.attachment[(w, c)]
        return m.entries[row[sk.kind[w].vertex]][row[u]] * val[u]

    def assign(w, v, kids, values):
        kv = contrib(w, v)
        tau = values[v] / kv if kv else Fraction(1)
        return {c: contrib(w, c) * tau if c in nonzero else Fraction(0) for c in kids}

    starts = {c: Fraction(1) for c in sk.contracted() if c in nonzero}
    values = _search(sk, starts, assign)
    return tuple(values.get(v, Fraction(0)) for v in sk.forest.vertices)


def lift_null_vector(t, lam, s, sk: SkeletonForest | None = None, component_vectors=None) -> tuple:
    """Map a skeleton null vector back to an eigenvector of T.

    The result is zero-free on the components whose skeleton vertices carry
    non-zero entries of ``s`` and zero elsewhere. Each component carries a
    multiple of its own eigenvector (``component_vectors[label]`` maps
    member -> value, defaulting to the one with first entry 1); the start
    component keeps factor 1.
    """
    m, f = _coerce(t)
    lam = Fraction(lam)
    sk = sk or skeleton(m, lam)
    s = as_vector(s)
    if len(s) != len(sk.forest):
        raise ValueError("vector length does not match the skeleton")
    if not verify_eigenvector(adjacency_matrix(sk.forest), 0, s):
        raise ValueError("s is not a non-zero null vector of the skeleton")
    sval = dict(zip(sk.forest.vertices, s))
    if any(sval[w] for w in sk.boundary()):
        raise InternalConsistencyError("skeleton null vector is non-zero on a boundary vertex")
    row = {v: i for i, v in enumerate(f.vertices)}
    comp_vec = component_vectors or _component_vectors(m, sk, lam)

    def coef(w, c):
        u = sk.attachment[(w, c)]
        return m.entries[row[sk.kind[w].vertex]][row[u]] * comp_vec[c][u]

    def assign(w, v, kids, alpha):
        k = coef(w, v) * alpha[v]
        tau = k / sval[v] if sval[v] else Fraction(1)
        return {c: sval[c] * tau / coef(w, c) for c in kids}

    starts = {c: Fraction(1) for c in sk.contracted() if sval[c]}
    alpha = _search(sk, starts, assign)
    x = dict.fromkeys(f.vertices, Fraction(0))
    for c, a in alpha.items():
        if a:
            for u, y in comp_vec[c].items():
                x[u] = a * y
    return tuple(x[v] for v in f.vertices)


def component_pattern(sk: SkeletonForest, f: Forest, x) -> frozenset:
    """Contracted skeleton vertices whose components carry non-zero entries of x."""
    val = dict(zip(f.vertices, x))
    return frozenset(c for c in sk.contracted() if val[sk.kind[c].members[0]] != 0)
