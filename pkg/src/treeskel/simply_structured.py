"""{0, 1, -1} eigenspace bases for eigenvalues 0, 1 and -1."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NotAnEigenvalueError
from .graph import Forest, bipartition, require_tree
from .linalg import multiplicity, verify_eigenvector
from .matching import kernel_basis
from .skeleton import lift_null_vector, skeleton, support_report


@dataclass(frozen=True)
class ReductionStep:
    kept: str  # v, stays in the tree
    removed: tuple  # (u0, u1, y, w): u0, u1 hang off y, y and w hang off v


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple
    terminal: tuple  # the final K2 edge


@dataclass(frozen=True)
class ClassCResult:
    member: bool
    trace: ReductionTrace | None = None
    certificate: tuple | None = None  # +-1 per vertex, in the tree's vertex order


def _eccentricities(f: Forest, alive: set) -> dict:
    ecc = {}
    for s in alive:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in f.neighbors(u):
                if w in alive and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        ecc[s] = max(dist.values())
    return ecc


def _gadgets(f: Forest, alive: set):
    """Removable gadgets (v, u0, u1, y, w), most eccentric v first."""
    def live(u):
        return [w for w in f.neighbors(u) if w in alive]

    deg = {u: len(live(u)) for u in alive}
    ecc = _eccentricities(f, alive)
    found = []
    for v in alive:
        nbrs = live(v)
        leaves = [w for w in nbrs if deg[w] == 1]
        for y in nbrs:
            if deg[y] != 3:
                continue
            hanging = [u for u in live(y) if u != v]
            if len(hanging) != 2 or any(deg[u] != 1 for u in hanging):
                continue
            u0, u1 = f.sort_key(hanging)
            for w in leaves:
                found.append((v, u0, u1, y, w))
    found.sort(key=lambda g: (-ecc[g[0]], f.index(g[0]), f.index(g[3]), f.index(g[4])))
    return found


def _reduce(f: Forest):
    """Search for a gadget sequence reducing ``f`` to K2; None if there is none."""
    failed = set()

    def go(alive: frozenset):
        if len(alive) == 2:
            a, b = f.sort_key(alive)
            return [] if f.has_edge(a, b) else None
        if len(alive) < 2 or alive in failed:
            return None
        for v, u0, u1, y, w in _gadgets(f, set(alive)):
            rest = go(alive - {u0, u1, y, w})
            if rest is not None:
                return [ReductionStep(v, (u0, u1, y, w))] + rest
        failed.add(alive)
        return None

    steps = go(frozenset(f.vertices))
    if steps is None:
        return None
    removed = set()
    for s in steps:
        removed.update(s.removed)
    terminal = tuple(v for v in f.vertices if v not in removed)
    return ReductionTrace(tuple(steps), terminal)


def is_class_C(t: Forest) -> ClassCResult:
    """Decide whether ``t`` has a {1, -1} eigenvector for eigenvalue 1.

    Members reduce to K2 by repeatedly deleting a leaf ``w`` of some ``v``
    together with a neighbour ``y`` of ``v`` that carries exactly two more
    leaves. Replaying the deletions backwards from the all-ones vector on
    K2 yields the certificate.
    """
    require_tree(t)
    if len(t) % 4 != 2:
        # each step removes four vertices and K2 has two
        return ClassCResult(False)
    trace = _reduce(t)
    if trace is None:
        return ClassCResult(False)
    value = {v: 1 for v in trace.terminal}
    for step in reversed(trace.steps):
        s = value[step.kept]
        u0, u1, y, w = step.removed
        value[w] = s
        value[y] = value[u0] = value[u1] = -s
    cert = tuple(value[v] for v in t.vertices)
    if not verify_eigenvector(t, 1, cert):
        raise AssertionError("reduction certificate failed the eigen-equation")
    return ClassCResult(True, trace, cert)


def _check_lambda(t: Forest, lam) -> Fraction:
    lam = Fraction(lam)
    if lam not in (0, 1, -1):
        raise DomainError(f"simply structured bases only exist for 0, 1, -1, not {lam}")
    if multiplicity(t, lam) == 0:
        raise NotAnEigenvalueError(f"{lam} is not an eigenvalue")
    return lam


def has_simply_structured_basis(t: Forest, lam) -> bool:
    require_tree(t)
    lam = _check_lambda(t, lam)
    if lam == 0:
        return True
    # -1 reduces to 1: flipping one colour class maps the eigenspaces onto each other
    report = support_report(t, 1)
    return all(is_class_C(t.induced(c)).member for c in report.eigen_components)


def flip_signs(t: Forest, x) -> tuple:
    """Negate the entries on the second colour class of ``t``."""
    _, second = bipartition(t)
    return tuple(-a if v in second else a for v, a in zip(t.vertices, x))


def simply_structured_basis(t: Forest, lam) -> list[tuple]:
    """A {0, 1, -1} basis of the eigenspace for ``lam`` in {0, 1, -1}."""
    require_tree(t)
    lam = _check_lambda(t, lam)
    if lam == 0:
        return kernel_basis(t)
    if lam == -1:
        return [flip_signs(t, x) for x in simply_structured_basis(t, 1)]
    report = support_report(t, 1)
    sk = skeleton(t, 1, report)
    certs = {}
    for c in sk.contracted():
        members = sk.kind[c].members
        res = is_class_C(t.induced(members))
        if not res.member:
            raise DomainError(
                f"component {list(members)} has no {{1,-1}} eigenvector; no simply structured basis"
            )
        certs[c] = {u: Fraction(a) for u, a in zip(members, res.certificate)}
    out = []
    for s in kernel_basis(sk.forest):
        x = lift_null_vector(t, 1, s, sk, component_vectors=certs)
        if any(a not in (0, 1, -1) for a in x):
            raise AssertionError("sign correction produced an entry outside {0, 1, -1}")
        out.append(tuple(int(a) for a in x))
    return out
