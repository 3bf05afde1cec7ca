"""Vertex-labelled forests: parsing, components, deletion, contraction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised for structurally invalid graphs or bad vertex references."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class _DisjointSet:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


class Forest:
    """An undirected acyclic graph on string-labelled vertices.

    Vertex order is significant: it fixes matrix row order and every
    deterministic tie-break in the package. Equality ignores order and
    compares vertex and edge sets only.
    """

    __slots__ = ("vertices", "edges", "_index", "_adj", "_cache")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        vertices = tuple(vertices)
        index = {}
        for v in vertices:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex labels must be non-empty strings, got {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        adj: dict[str, list[str]] = {v: [] for v in vertices}
        seen = set()
        dsu = _DisjointSet()
        canon = []
        for u, v in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"edge endpoint {missing!r} is not a vertex")
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {u}-{v}")
            if not dsu.union(u, v):
                raise GraphError(f"edge {u}-{v} closes a cycle")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            canon.append((u, v) if index[u] < index[v] else (v, u))
        canon.sort(key=lambda e: (index[e[0]], index[e[1]]))
        self.vertices = vertices
        self.edges = tuple(canon)
        self._index = index
        self._adj = {v: tuple(sorted(ns, key=index.__getitem__)) for v, ns in adj.items()}
        self._cache = {}

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Forest):
            return NotImplemented
        return (
            set(self.vertices) == set(other.vertices)
            and self.edge_set() == other.edge_set()
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.edge_set()))

    def __repr__(self) -> str:
        edges = " ".join(f"{u}-{v}" for u, v in self.edges)
        return f"Forest(n={len(self)}, edges=[{edges}])"

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges)

    def index(self, v: str) -> int:
        return self._index[v]

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def has_edge(self, u: str, v: str) -> bool:
        return u in self._adj and v in self._adj[u]

    def leaves(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if len(self._adj[v]) == 1)

    def is_tree(self) -> bool:
        return len(self.vertices) > 0 and len(self.edges) == len(self.vertices) - 1

    def sort_key(self, vs: Iterable[str]) -> list[str]:
        """Return ``vs`` sorted by this forest's vertex order."""
        return sorted(vs, key=self._index.__getitem__)

    def induced(self, keep: Iterable[str]) -> "Forest":
        keep = set(keep)
        unknown = keep - self._index.keys()
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        # a subgraph of a valid forest is valid, so skip the checks in __init__
        sub = object.__new__(Forest)
        sub.vertices = tuple(v for v in self.vertices if v in keep)
        sub.edges = tuple((u, v) for u, v in self.edges if u in keep and v in keep)
        sub._index = {v: i for i, v in enumerate(sub.vertices)}
        sub._adj = {v: tuple(w for w in self._adj[v] if w in keep) for v in sub.vertices}
        sub._cache = {}
        return sub

    def relabel(self, mapping: Mapping[str, str]) -> "Forest":
        return Forest(
            [mapping.get(v, v) for v in self.vertices],
            [(mapping.get(u, u), mapping.get(v, v)) for u, v in self.edges],
        )


def require_tree(t: Forest) -> None:
    if not t.is_tree():
        raise GraphError(f"expected a tree, got a forest with {len(components(t))} components")


# -- text format ----------------------------------------------------------


def parse_graph(text: str) -> Forest:
    """Parse an edge-list document.

    Each non-blank line that does not start with ``#`` holds either
    ``u v`` or a single vertex label. Vertex order is first appearance.
    """
    index: dict[str, None] = {}
    edges = []
    seen = set()
    dsu = _DisjointSet()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) > 2:
            raise GraphFormatError(f"expected 'u v' or a lone label, got {line!r}", lineno)
        for p in parts:
            index.setdefault(p)
        if len(parts) == 1:
            continue
        u, v = parts
        if u == v:
            raise GraphFormatError(f"self-loop at {u!r}", lineno)
        key = frozenset(parts)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u}-{v}", lineno)
        if not dsu.union(u, v):
            raise GraphFormatError(f"cycle: edge {u}-{v} joins an existing path", lineno)
        seen.add(key)
        edges.append((u, v))
    return Forest(index, edges)


def serialize_graph(f: Forest) -> str:
    lines = sorted(" ".join(sorted(e)) for e in f.edges)
    covered = {v for e in f.edges for v in e}
    lines += sorted(v for v in f.vertices if v not in covered)
    return "".join(line + "\n" for line in lines)


def read_graph(path) -> Forest:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# -- structure ------------------------------------------------------------


def component_sets(f: Forest) -> list[list[str]]:
    """Vertex lists of the components, each in vertex order, listed by first vertex."""
    seen = set()
    out = []
    for root in f.vertices:
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in f.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(f.sort_key(comp))
    return out


def components(f: Forest) -> list[Forest]:
    return [f.induced(c) for c in component_sets(f)]


def remove_vertices(g: Forest, m: Iterable[str]) -> Forest:
    m = set(m)
    unknown = [v for v in m if v not in g]
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    return g.induced(v for v in g.vertices if v not in m)


def bipartition(f: Forest) -> tuple[frozenset, frozenset]:
    """2-colour ``f``; the first vertex of each component lands in the first class."""
    side = {}
    for root in f.vertices:
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in f.neighbors(u):
                if w not in side:
                    side[w] = 1 - side[u]
                    queue.append(w)
    a = frozenset(v for v, s in side.items() if s == 0)
    return a, frozenset(f.vertices) - a


@dataclass(frozen=True)
class ContractionResult:
    contracted: Forest
    # contracted vertex -> original label, or frozenset of originals for a part
    origin: Mapping[str, object]

    def members(self, v: str) -> frozenset:
        o = self.origin[v]
        return o if isinstance(o, frozenset) else frozenset((o,))


def contract_subgraphs(t: Forest, parts: Iterable[Iterable[str]]) -> ContractionResult:
    """Contract each connected, pairwise disjoint vertex set of ``t`` to one vertex.

    Parts are numbered by the position of their first vertex; part k gets the
    label ``C#k`` (skipping labels still used by uncontracted vertices).
    """
    parts = [set(p) for p in parts]
    owner = {}
    for i, p in enumerate(parts):
        if not p:
            raise GraphError("empty part")
        for v in p:
            if v not in t:
                raise GraphError(f"unknown vertex {v!r}")
            if v in owner:
                raise GraphError(f"parts overlap at {v!r}")
            owner[v] = i
        if len(component_sets(t.induced(p))) != 1:
            raise GraphError(f"part {sorted(p)} is not connected")
    order = sorted(range(len(parts)), key=lambda i: min(t.index(v) for v in parts[i]))
    taken = {v for v in t.vertices if v not in owner}
    label = {}
    k = 0
    for i in order:
        k += 1
        while f"C#{k}" in taken:
            k += 1
        label[i] = f"C#{k}"

    def image(v):
        return label[owner[v]] if v in owner else v

    vertices = []
    origin: dict[str, object] = {}
    for v in t.vertices:
        img = image(v)
        if img not in origin:
            vertices.append(img)
            origin[img] = frozenset(parts[owner[v]]) if v in owner else v
    edges = set()
    for u, v in t.edges:
        a, b = image(u), image(v)
        if a != b:
            edges.add((a, b) if a < b else (b, a))
    # a contraction of a forest by connected parts stays a forest; Forest() rechecks
    return ContractionResult(Forest(vertices, sorted(edges)), origin)
