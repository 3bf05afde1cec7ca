"""Maximum matchings of forests and the {0, 1, -1} null space basis."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .graph import Forest


@dataclass(frozen=True)
class MatchingClassification:
    matching: frozenset  # of frozenset edges
    K: frozenset  # missed by some maximum matching
    N: frozenset  # covered by every maximum matching
    K_M: frozenset  # missed by ``matching`` itself
    forced_edges: frozenset  # edges lying in every maximum matching


def _edge(u, v) -> frozenset:
    return frozenset((u, v))


def maximum_matching(f: Forest, removed_edge=None) -> frozenset:
    """Maximum matching by leaf peeling.

    The lowest-ordered current leaf is matched to its neighbour and both are
    deleted; vertices left isolated stay exposed. Greedy leaf matching is
    optimal on forests.
    """
    index = f.index
    alive = set(f.vertices)
    deg = {v: f.degree(v) for v in f.vertices}
    if removed_edge is not None:
        a, b = tuple(removed_edge)
        deg[a] -= 1
        deg[b] -= 1

    def nbrs(v):
        for w in f.neighbors(v):
            if w in alive and (removed_edge is None or _edge(v, w) != removed_edge):
                yield w

    heap = [(index(v), v) for v in f.vertices if deg[v] == 1]
    heapq.heapify(heap)
    matching = []
    while heap:
        _, u = heapq.heappop(heap)
        if u not in alive or deg[u] != 1:
            continue
        v = next(nbrs(u))
        matching.append(_edge(u, v))
        for x in (u, v):
            alive.discard(x)
        for w in f.neighbors(v):
            if w in alive and (removed_edge is None or _edge(v, w) != removed_edge):
                deg[w] -= 1
                if deg[w] == 1:
                    heapq.heappush(heap, (index(w), w))
    return frozenset(matching)


def matching_number(f: Forest) -> int:
    return len(maximum_matching(f))


def mate_map(matching) -> dict:
    mate = {}
    for e in matching:
        u, v = tuple(e)
        mate[u] = v
        mate[v] = u
    return mate


def classify_vertices(f: Forest, matching=None) -> MatchingClassification:
    """Split vertices into may-be-missed (K) and never-missed (N).

    A vertex is missable iff an even-length alternating path joins it to a
    vertex exposed by the chosen maximum matching (exact on bipartite
    graphs). An edge is forced iff it is matched and both ends are never
    missed.
    """
    if matching is None:
        matching = maximum_matching(f)
    mate = mate_map(matching)
    exposed = [v for v in f.vertices if v not in mate]
    even = set(exposed)
    queue = deque(exposed)
    while queue:
        a = queue.popleft()
        for b in f.neighbors(a):
            if mate.get(a) == b:
                continue
            c = mate.get(b)
            if c is not None and c not in even:
                even.add(c)
                queue.append(c)
    K = frozenset(even)
    N = frozenset(f.vertices) - K
    forced = frozenset(e for e in matching if e <= N)
    return MatchingClassification(frozenset(matching), K, N, frozenset(exposed), forced)


def kernel_basis(f: Forest, classification: MatchingClassification | None = None) -> list[tuple[int, ...]]:
    """One {0, 1, -1} null vector of the adjacency matrix per exposed vertex.

    For exposed v, walk alternating paths (unmatched edge, then matched edge)
    from v through never-missed/missable vertex pairs. Vertices at distance
    0 mod 4 get +1, 2 mod 4 get -1, all others 0. Vectors are returned in
    vertex order of their defining vertex and follow the forest's vertex order.
    """
    c = classification or classify_vertices(f)
    mate = mate_map(c.matching)
    allowed = c.K
    out = []
    for v in f.sort_key(c.K_M):
        x = [0] * len(f)
        dist = {v: 0}
        queue = deque([v])
        while queue:
            a = queue.popleft()  # a is missable, at even distance
            da = dist[a]
            x[f.index(a)] = 1 if da % 4 == 0 else -1
            for b in f.neighbors(a):
                if mate.get(a) == b or b in dist or b not in c.N:
                    continue
                dist[b] = da + 1
                w = mate.get(b)
                if w is None or w in dist or w not in allowed or (w in c.K_M and w != v):
                    continue
                dist[w] = da + 2
                queue.append(w)
        out.append(tuple(x))
    return out
