"""Tree generators and isomorphism-invariant canonical forms."""

from __future__ import annotations

import heapq
import itertools
import random
from typing import Iterator, Mapping

from .graph import Forest, component_sets


def prufer_to_tree(seq, n: int | None = None) -> Forest:
    """Decode a Prüfer sequence over labels 0..n-1 into a tree on "0".."n-1"."""
    seq = list(seq)
    if n is None:
        n = len(seq) + 2
    if n == 1:
        return Forest(["0"])
    if len(seq) != n - 2:
        raise ValueError(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((str(leaf), str(a)))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(leaves, a)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((str(u), str(v)))
    return Forest([str(i) for i in range(n)], edges)


def all_labeled_trees(n: int) -> Iterator[Forest]:
    """Every labelled tree on n vertices (n**(n-2) of them)."""
    if n == 1:
        yield Forest(["0"])
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_to_tree(seq, n)


def random_tree(n: int, rng: random.Random) -> Forest:
    """A uniformly random labelled tree on n vertices."""
    if n <= 2:
        return prufer_to_tree([], n)
    return prufer_to_tree([rng.randrange(n) for _ in range(n - 2)], n)


def path(n: int, prefix: str = "p") -> Forest:
    vs = [f"{prefix}{i}" for i in range(n)]
    return Forest(vs, zip(vs, vs[1:]))


def star(leaves: int, center: str = "c", prefix: str = "l") -> Forest:
    vs = [center] + [f"{prefix}{i}" for i in range(1, leaves + 1)]
    return Forest(vs, [(center, v) for v in vs[1:]])


# -- canonical forms ------------------------------------------------------


def _centers(f: Forest, comp: list[str]) -> list[str]:
    if len(comp) <= 2:
        return comp
    degree = {v: f.degree(v) for v in comp}
    layer = [v for v in comp if degree[v] == 1]
    remaining = len(comp)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for w in f.neighbors(leaf):
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def _rooted_code(f: Forest, root: str, colour: Mapping[str, str] | None) -> str:
    # iterative post-order AHU encoding
    parent = {root: None}
    order = [root]
    for u in order:
        for w in f.neighbors(u):
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    code = {}
    for u in reversed(order):
        kids = sorted(code[w] for w in f.neighbors(u) if w != parent[u])
        tag = colour[u] if colour is not None else ""
        code[u] = f"{tag}({''.join(kids)})"
    return code[root]


def canonical_form(f: Forest, colour: Mapping[str, str] | None = None) -> str:
    """A string equal for two forests iff they are (colour-preserving) isomorphic."""
    codes = []
    for comp in component_sets(f):
        codes.append(min(_rooted_code(f, c, colour) for c in _centers(f, comp)))
    return "|".join(sorted(codes))


def isomorphic(a: Forest, b: Forest, colour_a=None, colour_b=None) -> bool:
    return len(a) == len(b) and canonical_form(a, colour_a) == canonical_form(b, colour_b)


def _from_code(code: str) -> Forest:
    # inverse of _rooted_code for uncoloured codes
    vertices, edges, stack = [], [], []
    for ch in code:
        if ch == "(":
            v = str(len(vertices))
            vertices.append(v)
            if stack:
                edges.append((stack[-1], v))
            stack.append(v)
        elif ch == ")":
            stack.pop()
    return Forest(vertices, edges)


def unlabeled_trees(n: int) -> list[Forest]:
    """One representative per isomorphism class of trees on n vertices.

    Built by leaf augmentation with canonical deduplication; the list is
    sorted by canonical form so the output is deterministic.
    """
    if n < 1:
        return []
    level = {canonical_form(Forest(["0"])): Forest(["0"])}
    for size in range(2, n + 1):
        nxt = {}
        for t in level.values():
            new = str(size - 1)
            for v in t.vertices:
                g = Forest(t.vertices + (new,), t.edges + ((v, new),))
                key = canonical_form(g)
                if key not in nxt:
                    nxt[key] = g
        level = nxt
    return [_from_code(code.split("|")[0]) for code in sorted(level)]
