"""Exact rational eigenspaces of tree-patterned matrices.

Everything here works over :class:`fractions.Fraction`. Null spaces are
computed by fraction-free elimination on integer-scaled rows, then turned
back into reduced rationals for the basis vectors.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotAnEigenvalueError  # noqa: F401  (re-exported)
from .graph import Forest, GraphError, component_sets

Vector = tuple  # tuple[Fraction, ...] in the ambient vertex order

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Read an integer or ``p/q`` string (no decimals) or a numeric value."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if not m:
            raise ValueError(f"not a rational 'p/q' or integer: {value!r}")
        num, den = m.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise TypeError(f"cannot read {type(value).__name__} as a rational")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _q(v) -> Fraction:
    if type(v) is Fraction:
        return v
    return parse_rational(v) if isinstance(v, str) else Fraction(v)


def as_vector(x: Iterable) -> Vector:
    return tuple(map(_q, x))


# -- matrices -------------------------------------------------------------


@dataclass(frozen=True)
class TreePatternMatrix:
    """Square rational matrix whose off-diagonal non-zero pattern is a forest.

    The pattern must be combinatorially symmetric; values need not be.
    """

    vertex_order: tuple
    entries: tuple  # rows of Fractions

    def __post_init__(self):
        n = len(self.vertex_order)
        rows = tuple(tuple(x if type(x) is Fraction else Fraction(x) for x in row) for row in self.entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"matrix must be {n}x{n}")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "vertex_order", tuple(self.vertex_order))
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                a, b = rows[i][j] != 0, rows[j][i] != 0
                if a != b:
                    raise ValueError(
                        f"pattern not combinatorially symmetric at ({i},{j})"
                    )
                if a:
                    edges.append((self.vertex_order[i], self.vertex_order[j]))
        try:
            pattern = Forest(self.vertex_order, edges)
        except GraphError as exc:
            raise ValueError(f"pattern graph is not a forest: {exc}") from None
        object.__setattr__(self, "_pattern", pattern)

    @classmethod
    def _trusted(cls, vertex_order: tuple, rows: tuple, pattern: Forest) -> "TreePatternMatrix":
        # internal constructor for matrices that are valid by construction
        m = object.__new__(cls)
        object.__setattr__(m, "vertex_order", vertex_order)
        object.__setattr__(m, "entries", rows)
        object.__setattr__(m, "_pattern", pattern)
        return m

    def sparse_rows(self) -> tuple:
        """Per row, the (column, value) pairs of its non-zero entries."""
        try:
            return self._sparse
        except AttributeError:
            pass
        rows = tuple(tuple((j, a) for j, a in enumerate(r) if a) for r in self.entries)
        object.__setattr__(self, "_sparse", rows)
        return rows

    @property
    def order(self) -> int:
        return len(self.vertex_order)

    @property
    def pattern(self) -> Forest:
        return self._pattern

    def is_value_symmetric(self) -> bool:
        n = self.order
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def has_zero_diagonal(self) -> bool:
        return all(self.entries[i][i] == 0 for i in range(self.order))

    def shifted(self, lam) -> list[list[Fraction]]:
        """Rows of M - lam*I."""
        lam = Fraction(lam)
        rows = [list(r) for r in self.entries]
        for i in range(self.order):
            rows[i][i] -= lam
        return rows

    def submatrix(self, keep: Iterable[str]) -> "TreePatternMatrix":
        keep = set(keep)
        idx = [i for i, v in enumerate(self.vertex_order) if v in keep]
        order = tuple(self.vertex_order[i] for i in idx)
        return TreePatternMatrix._trusted(
            order,
            tuple(tuple(self.entries[i][j] for j in idx) for i in idx),
            self.pattern.induced(order),
        )

    def to_json(self) -> str:
        doc = {
            "order": self.order,
            "vertex_order": list(self.vertex_order),
            "entries": [[format_rational(x) for x in row] for row in self.entries],
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TreePatternMatrix":
        doc = json.loads(text)
        order = doc.get("order")
        vo = doc.get("vertex_order") or [f"v{i + 1}" for i in range(order or 0)]
        if order is not None and order != len(vo):
            raise ValueError("order does not match vertex_order length")
        rows = tuple(tuple(parse_rational(x) for x in row) for row in doc["entries"])
        return cls(tuple(vo), rows)


_ZERO, _ONE = Fraction(0), Fraction(1)


def adjacency_matrix(t: Forest) -> TreePatternMatrix:
    cached = t._cache.get("adjacency")
    if cached is not None:
        return cached
    n = len(t)
    rows = [[_ZERO] * n for _ in range(n)]
    for u, v in t.edges:
        i, j = t.index(u), t.index(v)
        rows[i][j] = rows[j][i] = _ONE
    m = TreePatternMatrix._trusted(t.vertices, tuple(tuple(r) for r in rows), t)
    t._cache["adjacency"] = m
    return m


def as_matrix(obj) -> TreePatternMatrix:
    return obj if isinstance(obj, TreePatternMatrix) else adjacency_matrix(obj)


# -- elimination ----------------------------------------------------------


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            d = x.denominator
            if d != 1:
                den = lcm(den, d)
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def _rref(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan reduction; returns pivot rows and pivot columns."""
    rows = [r[:] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = None
        best = 0
        # partial pivoting: smallest non-zero magnitude keeps integers small
        for i in range(r, len(rows)):
            a = rows[i][c]
            if a and (piv is None or abs(a) < best):
                piv, best = i, abs(a)
                if best == 1:
                    break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(len(rows)):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            g = gcd(p, f)
            pp, ff = p // g, f // g
            new = [pp * a - ff * b for a, b in zip(row, prow)]
            d = gcd(*new)
            if d > 1:
                new = [a // d for a in new]
            rows[i] = new
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    ncols = len(rows[0])
    return len(_rref(_integer_rows([[Fraction(x) for x in r] for r in rows]), ncols)[1])


def normalize(x: Vector) -> Vector:
    """Scale so the first non-zero entry is 1."""
    for a in x:
        if a:
            return tuple(b / a for b in x)
    return tuple(x)


def null_space(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Canonical exact basis of {x : rows @ x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = _rref(_integer_rows(rows), ncols)
    pivot_set = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[j] = Fraction(1)
        for row, c in zip(red, pivots):
            if row[j]:
                x[c] = Fraction(-row[j], row[c])
        basis.append(normalize(x))
    return basis


# -- eigenspaces ----------------------------------------------------------


@dataclass(frozen=True)
class RationalBasis:
    vertex_order: tuple
    lam: Fraction
    vectors: tuple  # tuple of Vector
    # witness components (tuples of vertices) when the basis is known to be straight
    straight_order: tuple | None = field(default=None)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def eigenspace_basis(m, lam) -> RationalBasis:
    """Exact basis of the eigenspace of ``m`` (matrix or forest) for ``lam``.

    Empty iff ``lam`` is not an eigenvalue.
    """
    m = as_matrix(m)
    lam = parse_rational(lam) if isinstance(lam, str) else Fraction(lam)
    vecs = null_space(m.shifted(lam), m.order)
    return RationalBasis(m.vertex_order, lam, tuple(vecs))


def multiplicity(m, lam) -> int:
    m = as_matrix(m)
    return m.order - rank(m.shifted(lam))


def verify_eigenvector(m, lam, x) -> bool:
    """True iff x is non-zero and m @ x == lam * x exactly."""
    m = as_matrix(m)
    x = as_vector(x)
    if len(x) != m.order:
        raise ValueError(f"vector has length {len(x)}, matrix has order {m.order}")
    if not any(x):
        return False
    lam = Fraction(lam)
    for i, row in enumerate(m.sparse_rows()):
        s = sum(a * x[j] for j, a in row if x[j])
        if s != lam * x[i]:
            return False
    return True


def integer_spectrum(t: Forest) -> dict[int, int]:
    """Multiplicities of the integer eigenvalues of the adjacency matrix of ``t``.

    Candidates are |k| <= max degree, which bounds the spectral radius.
    """
    n = len(t)
    base = [[0] * n for _ in range(n)]
    for u, v in t.edges:
        i, j = t.index(u), t.index(v)
        base[i][j] = base[j][i] = 1
    spectrum = {}
    found = 0
    bound = t.max_degree()
    for k in sorted(range(-bound, bound + 1), key=lambda k: (abs(k), k)):
        if found == n:
            break
        rows = [r[:] for r in base]
        for i in range(n):
            rows[i][i] = -k
        mult = n - len(_rref(rows, n)[1])
        if mult:
            spectrum[k] = mult
            found += mult
    return dict(sorted(spectrum.items()))


def always_zero(vectors: Sequence[Vector], vertex_order: Sequence[str]) -> set:
    """Vertices on which every vector vanishes."""
    return {v for i, v in enumerate(vertex_order) if all(x[i] == 0 for x in vectors)}


def support_components(f: Forest, vectors: Sequence[Vector]) -> list[list[str]]:
    """Components of ``f`` minus the common zero set of ``vectors``, by first vertex."""
    zero = always_zero(vectors, f.vertices)
    return component_sets(f.induced(v for v in f.vertices if v not in zero))


def is_straight(f: Forest, vectors: Sequence[Vector], witnesses: Sequence[Sequence[str]]) -> bool:
    """Triangular straightness: vector j is non-zero on all of witness j and
    every later vector vanishes on witness j. Witnesses must be disjoint."""
    if len(witnesses) != len(vectors):
        return False
    seen = set()
    for w in witnesses:
        if not w or seen & set(w):
            return False
        seen |= set(w)
    for j, w in enumerate(witnesses):
        idx = [f.index(v) for v in w]
        if any(vectors[j][i] == 0 for i in idx):
            return False
        for later in vectors[j + 1:]:
            if any(later[i] != 0 for i in idx):
                return False
    return True


def straighten_basis(t, b: RationalBasis) -> RationalBasis:
    """Make ``b`` straight by elimination on eigen-components.

    Components of T minus the always-zero set are numbered in discovery
    order; for each vector in turn the first unused component on which it
    is non-zero becomes its witness and is cleared from all later vectors.
    """
    m = as_matrix(t)
    f = m.pattern
    vectors = [list(as_vector(x)) for x in b.vectors]
    for x in vectors:
        if not verify_eigenvector(m, b.lam, x):
            raise ValueError("basis contains a vector that is not an eigenvector")
    dim = multiplicity(m, b.lam)
    if rank(vectors) != len(vectors) or len(vectors) != dim:
        raise ValueError(f"not a basis: expected {dim} independent eigenvectors")
    comps = support_components(f, [tuple(x) for x in vectors])
    used = set()
    witnesses = []
    for j, x in enumerate(vectors):
        pick = next(
            k for k, c in enumerate(comps) if k not in used and x[f.index(c[0])] != 0
        )
        used.add(pick)
        comp = comps[pick]
        witnesses.append(tuple(comp))
        i = f.index(comp[0])
        for y in vectors[j + 1:]:
            if y[i]:
                ratio = y[i] / x[i]
                for k in range(len(y)):
                    if x[k]:
                        y[k] -= ratio * x[k]
    out = tuple(normalize(tuple(x)) for x in vectors)
    return RationalBasis(m.vertex_order, b.lam, out, tuple(witnesses))
