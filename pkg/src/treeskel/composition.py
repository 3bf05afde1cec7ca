"""Meta skeletons and the blow-up construction of trees with prescribed multiplicity."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import DomainError
from .graph import Forest, component_sets, parse_graph
from .linalg import eigenspace_basis, multiplicity, parse_rational
from .matching import classify_vertices, maximum_matching
from .skeleton import meta_skeleton, skeleton
from .trees import canonical_form, random_tree, unlabeled_trees

EXHAUSTIVE_MAX_N = 10
DESK_MAX_N = 16
SAMPLES_PER_SIZE = 200


@dataclass(frozen=True)
class MetaSkeletonSpec:
    tree: Forest
    X: frozenset
    lam: Fraction


@dataclass(frozen=True)
class Replacement:
    tree: Forest
    attach: str


@dataclass(frozen=True)
class BlowupPlan:
    replacements: Mapping[str, Replacement]


@dataclass(frozen=True)
class Violation:
    condition: str
    witnesses: tuple

    def __str__(self):
        return f"{self.condition}: {', '.join(map(str, self.witnesses))}"


@dataclass(frozen=True)
class BlowupResult:
    tree: Forest
    predicted_multiplicity: int
    origin: Mapping[str, str] = field(repr=False)  # new vertex -> meta skeleton vertex


class BlowupError(DomainError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(map(str, self.problems)))


def _core(spec: MetaSkeletonSpec) -> Forest:
    return spec.tree.induced(v for v in spec.tree.vertices if v not in spec.X)


def validate_meta_skeleton(spec: MetaSkeletonSpec) -> list[Violation]:
    """All violated defining conditions of a meta skeleton; empty means valid."""
    t, X = spec.tree, spec.X
    out = []
    unknown = [x for x in X if x not in t]
    if unknown:
        return [Violation("unknown_vertex", tuple(sorted(unknown)))]
    if not t.is_tree():
        out.append(Violation("not_a_tree", ()))
    for u, v in t.edges:
        if u in X and v in X:
            out.append(Violation("X_not_independent", (f"{u}-{v}",)))
    core = _core(spec)
    for comp in component_sets(core):
        c = core.induced(comp)
        cls = classify_vertices(c)
        if not cls.K:
            out.append(Violation("component_has_perfect_matching", tuple(comp)))
        bad = [v for v in comp if v in cls.K and any(w in X for w in t.neighbors(v))]
        if bad:
            out.append(Violation("missable_vertex_adjacent_to_X", tuple(bad)))
    cls = classify_vertices(core)
    for e in sorted(sorted(e) for e in cls.forced_edges):
        out.append(Violation("forced_edge", (f"{e[0]}-{e[1]}",)))
    return out


def _has_zero_free_vector(r: Forest, lam) -> bool:
    basis = eigenspace_basis(r, lam)
    return len(basis) == 1 and all(basis.vectors[0])


def predicted_multiplicity(spec: MetaSkeletonSpec) -> int:
    core = _core(spec)
    return len(core) - 2 * len(maximum_matching(core))


def blow_up(spec: MetaSkeletonSpec, plan: BlowupPlan, strict: bool = True) -> BlowupResult:
    """Substitute trees for meta skeleton vertices.

    X vertices take trees without eigenvalue ``lam``; missable vertices of
    the core take trees with a zero-free ``lam``-eigenvector; never-missed
    vertices stay single vertices. Meta skeleton edges are rewired to the
    chosen attachment vertices. ``strict=False`` skips the meta skeleton
    conditions (replacement checks still apply); used for negative controls.
    """
    problems = [str(v) for v in validate_meta_skeleton(spec)] if strict else []
    if problems:
        raise BlowupError(problems)
    lam = spec.lam
    core = _core(spec)
    missable = set()
    for comp in component_sets(core):
        missable |= classify_vertices(core.induced(comp)).K
    reps = {}
    for s in spec.tree.vertices:
        rep = plan.replacements.get(s)
        if rep is None:
            if s in spec.X or s in missable:
                problems.append(f"no replacement given for {s}")
                continue
            rep = Replacement(Forest(["0"]), "0")
        if rep.attach not in rep.tree:
            problems.append(f"attachment {rep.attach!r} is not a vertex of the replacement for {s}")
        elif not rep.tree.is_tree():
            problems.append(f"replacement for {s} is not a tree")
        elif s in spec.X:
            if multiplicity(rep.tree, lam) != 0:
                problems.append(f"replacement for X vertex {s} has eigenvalue {lam}")
        elif s in missable:
            if not _has_zero_free_vector(rep.tree, lam):
                problems.append(f"replacement for {s} lacks a zero-free {lam}-eigenvector")
        elif len(rep.tree) != 1:
            problems.append(f"never-missed vertex {s} must stay a single vertex")
        reps[s] = rep
    if problems:
        raise BlowupError(problems)

    def name(s, r):
        return s if len(reps[s].tree) == 1 else f"{s}.{r}"

    vertices, edges, origin = [], [], {}
    for s in spec.tree.vertices:
        r = reps[s].tree
        for v in r.vertices:
            vertices.append(name(s, v))
            origin[name(s, v)] = s
        edges += [(name(s, a), name(s, b)) for a, b in r.edges]
    for a, b in spec.tree.edges:
        edges.append((name(a, reps[a].attach), name(b, reps[b].attach)))
    return BlowupResult(Forest(vertices, edges), predicted_multiplicity(spec), origin)


def verify_blowup(spec: MetaSkeletonSpec, result: BlowupResult) -> list[str]:
    """Check the generated tree against its spec; returns failures (empty if none)."""
    failures = []
    t, lam = result.tree, spec.lam
    mult = multiplicity(t, lam)
    if mult != result.predicted_multiplicity:
        failures.append(f"multiplicity {mult} != predicted {result.predicted_multiplicity}")
    if mult == 0:
        return failures
    core = _core(spec)
    missable = set()
    for comp in component_sets(core):
        missable |= classify_vertices(core.induced(comp)).K
    sk = skeleton(t, lam)
    want = canonical_form(core, {v: "C" if v in missable else "B" for v in core.vertices})
    if canonical_form(sk.forest, sk.tags()) != want:
        failures.append("skeleton is not isomorphic to the meta skeleton core")
    ms = meta_skeleton(t, lam)
    got = canonical_form(ms.tree, {v: "X" if v in ms.non_eigen_vertices else "S" for v in ms.tree.vertices})
    want = canonical_form(spec.tree, {v: "X" if v in spec.X else "S" for v in spec.tree.vertices})
    if got != want:
        failures.append("recovered meta skeleton differs from the spec")
    return failures


# -- ingredients ----------------------------------------------------------


@dataclass(frozen=True)
class Ingredients:
    lam: Fraction
    without: tuple  # trees without eigenvalue lam
    zero_free: tuple  # trees with a zero-free lam-eigenvector


def generate_ingredients(lam, n_max: int, seed: int = 0) -> Ingredients:
    """Classify trees up to ``n_max`` vertices for use in :func:`blow_up`.

    Sizes up to EXHAUSTIVE_MAX_N are enumerated up to isomorphism; larger
    sizes (up to DESK_MAX_N) are sampled with a seeded generator.
    """
    lam = Fraction(lam)
    if n_max > DESK_MAX_N:
        raise DomainError(f"n_max is limited to {DESK_MAX_N}")
    return _ingredients(lam, n_max, seed)


@lru_cache(maxsize=32)
def _ingredients(lam: Fraction, n_max: int, seed: int) -> Ingredients:
    rng = random.Random(seed)
    found = {}
    for n in range(1, n_max + 1):
        if n <= EXHAUSTIVE_MAX_N:
            cands = unlabeled_trees(n)
        else:
            cands = [random_tree(n, rng) for _ in range(SAMPLES_PER_SIZE)]
        for t in cands:
            found.setdefault((n, canonical_form(t)), t)
    without, zero_free = [], []
    for key in sorted(found):
        t = found[key]
        basis = eigenspace_basis(t, lam)
        if not basis.vectors:
            without.append(t)
        elif len(basis) == 1 and all(basis.vectors[0]):
            zero_free.append(t)
    return Ingredients(lam, tuple(without), tuple(zero_free))


# -- random valid specs ---------------------------------------------------


@lru_cache(maxsize=None)
def _skeleton_components(max_n: int) -> tuple:
    """Trees usable as meta skeleton components: not perfectly matchable, no forced edge."""
    out = []
    for n in range(1, max_n + 1):
        for t in unlabeled_trees(n):
            cls = classify_vertices(t)
            if cls.K and not cls.forced_edges:
                out.append(t)
    return tuple(out)


def random_meta_skeleton(lam, rng: random.Random, max_components: int = 3, component_n: int = 6):
    """A random valid meta skeleton: skeleton components joined through X vertices."""
    pool = _skeleton_components(component_n)
    joinable = [t for t in pool if len(t) > 1]
    k = rng.randint(1, max_components)
    vertices, edges, X = [], [], []
    never = []  # never-missed vertices available for X attachments
    for i in range(k):
        comp = rng.choice(pool if k == 1 else joinable)
        names = {v: f"k{i}_{v}" for v in comp.vertices}
        vertices += names.values()
        edges += [(names[a], names[b]) for a, b in comp.edges]
        n_set = sorted(names[v] for v in classify_vertices(comp).N)
        if i > 0:
            if X and rng.random() < 0.4:
                x = rng.choice(X)
            else:
                x = f"x{len(X)}"
                X.append(x)
                vertices.append(x)
                edges.append((x, rng.choice(never)))
            edges.append((x, rng.choice(n_set)))
        never += n_set
    if never:
        for _ in range(rng.randint(0, 2)):
            x = f"x{len(X)}"
            X.append(x)
            vertices.append(x)
            edges.append((x, rng.choice(never)))
    return MetaSkeletonSpec(Forest(vertices, edges), frozenset(X), Fraction(lam))


def random_plan(spec: MetaSkeletonSpec, ingredients: Ingredients, rng: random.Random) -> BlowupPlan:
    core = _core(spec)
    missable = set()
    for comp in component_sets(core):
        missable |= classify_vertices(core.induced(comp)).K
    reps = {}
    for s in spec.tree.vertices:
        if s in spec.X:
            pick = ingredients.without
        elif s in missable:
            pick = ingredients.zero_free
        else:
            continue
        if not pick:
            raise DomainError(f"no ingredient tree available for {s} at lambda={spec.lam}")
        r = rng.choice(pick)
        reps[s] = Replacement(r, rng.choice(r.vertices))
    return BlowupPlan(reps)


# -- spec file ------------------------------------------------------------


def parse_spec_document(text: str) -> tuple[MetaSkeletonSpec, BlowupPlan]:
    """Read a JSON composition spec.

    Keys: ``lambda`` ("p/q"), ``meta_skeleton`` (edge-list text),
    ``non_eigenvalue_set`` (labels) and ``replacements`` mapping a label
    to ``{"edges": <edge-list text>, "attach": <label>}``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"spec is not valid JSON: {exc}") from None
    for key in ("lambda", "meta_skeleton"):
        if key not in doc:
            raise ValueError(f"spec is missing {key!r}")
    lam = parse_rational(str(doc["lambda"]))
    tree = parse_graph(doc["meta_skeleton"])
    X = frozenset(doc.get("non_eigenvalue_set", []))
    reps = {}
    for s, r in doc.get("replacements", {}).items():
        rt = parse_graph(r["edges"])
        reps[s] = Replacement(rt, r.get("attach", rt.vertices[0] if len(rt) else ""))
    return MetaSkeletonSpec(tree, X, lam), BlowupPlan(reps)
