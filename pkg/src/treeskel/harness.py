"""Property suites checking the constructive code against exact oracles.

Used by ``treeskel verify`` and by the acceptance tests. Every suite
returns a :class:`SuiteResult`; results only hold counts and failure
messages, so reports are reproducible byte for byte for a given seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .composition import (
    BlowupPlan,
    MetaSkeletonSpec,
    Replacement,
    blow_up,
    generate_ingredients,
    random_meta_skeleton,
    random_plan,
    validate_meta_skeleton,
    verify_blowup,
)
from .graph import Forest, bipartition, parse_graph
from .linalg import (
    _rref,
    adjacency_matrix,
    eigenspace_basis,
    integer_spectrum,
    is_straight,
    multiplicity,
    rank,
    straighten_basis,
    verify_eigenvector,
)
from .matching import classify_vertices, kernel_basis
from .oracles import always_zero_by_rank, deletion_classification, pm1_eigenvectors, simple_eigenvectors
from .simply_structured import (
    flip_signs,
    has_simply_structured_basis,
    is_class_C,
    simply_structured_basis,
)
from .skeleton import (
    boundary_edges,
    component_pattern,
    lift_null_vector,
    multiplicity_via_matching,
    project_eigenvector,
    skeleton,
    skeleton_fixed_point_holds,
    skeleton_violations,
    support_report,
)
from .tree_pattern import nylen_nullity, pattern_support, random_pattern_matrix, transfer_null_pattern
from .trees import all_labeled_trees, canonical_form, random_tree, unlabeled_trees

MAX_RANDOM_N = 14
MAX_FAILURES_KEPT = 5


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def check(self, ok: bool, message) -> None:
        self.checks += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(message() if callable(message) else message)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "instances": self.instances,
            "checks": self.checks,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "notes": dict(sorted(self.notes.items())),
        }


def _desc(t: Forest) -> str:
    return " ".join(f"{u}-{v}" for u, v in t.edges) or f"K1({t.vertices[0]})"


def tree_instances(exhaustive_n: int, samples: int, seed: int, max_n: int = MAX_RANDOM_N):
    """All labelled trees up to ``exhaustive_n``, then ``samples`` random trees
    for every size above it up to ``max_n``."""
    for n in range(1, exhaustive_n + 1):
        yield from all_labeled_trees(n)
    rng = random.Random(seed)
    for n in range(exhaustive_n + 1, max_n + 1):
        for _ in range(samples):
            yield random_tree(n, rng)


def _adjacency_rows(t: Forest) -> list[list[int]]:
    n = len(t)
    rows = [[0] * n for _ in range(n)]
    for u, v in t.edges:
        i, j = t.index(u), t.index(v)
        rows[i][j] = rows[j][i] = 1
    return rows


def _is_null_int(rows, x) -> bool:
    return all(sum(a * b for a, b in zip(r, x)) == 0 for r in rows)


# -- suites 1-4 and 6 share one pass over the tree instances --------------


def check_matching_nullity(t: Forest, res: SuiteResult) -> None:
    rows = _adjacency_rows(t)
    nullity = len(t) - len(_rref(rows, len(t))[1])
    cls = classify_vertices(t)
    res.check(
        nullity == len(t) - 2 * len(cls.matching),
        lambda: f"nullity {nullity} != n - 2|M| on {_desc(t)}",
    )


def check_kernel_basis(t: Forest, res: SuiteResult) -> None:
    rows = _adjacency_rows(t)
    cls = classify_vertices(t)
    vecs = kernel_basis(t, cls)
    nullity = len(t) - len(_rref(rows, len(t))[1])
    res.check(all(set(x) <= {0, 1, -1} for x in vecs), lambda: f"entry outside 0,+-1 on {_desc(t)}")
    res.check(all(_is_null_int(rows, x) and any(x) for x in vecs), lambda: f"A x != 0 on {_desc(t)}")
    res.check(rank(vecs) == nullity if vecs else nullity == 0, lambda: f"rank != nullity on {_desc(t)}")
    basis = eigenspace_basis(t, 0).vectors
    zero = {v for i, v in enumerate(t.vertices) if all(x[i] == 0 for x in basis)}
    res.check(zero == set(cls.N), lambda: f"always-zero set != N on {_desc(t)}")
    res.check(not any(a in cls.K and b in cls.K for a, b in t.edges), lambda: f"K not independent on {_desc(t)}")


def _eigen_data(t: Forest):
    for lam, mult in integer_spectrum(t).items():
        report = support_report(t, lam)
        yield lam, mult, report, skeleton(t, lam, report)


def check_skeleton_multiplicity(t: Forest, res: SuiteResult) -> None:
    for lam, mult, report, sk in _eigen_data(t):
        tag = f"lambda={lam} on {_desc(t)}"
        res.check(len(report.basis) == mult, lambda: f"eigenspace dim mismatch {tag}")
        res.check(multiplicity_via_matching(t, lam, sk) == mult, lambda: f"matching multiplicity {tag}")
        res.check(len(report.eigen_components) >= mult, lambda: f"fewer components than multiplicity {tag}")
        bad = skeleton_violations(sk)
        res.check(not bad, lambda: f"{bad[0]} {tag}")
        res.check(skeleton_fixed_point_holds(sk), lambda: f"fixed point fails {tag}")
        if boundary_edges(sk):
            res.notes["boundary_boundary_edges"] = res.notes.get("boundary_boundary_edges", 0) + 1


def check_transfer(t: Forest, res: SuiteResult) -> None:
    for lam, mult, report, sk in _eigen_data(t):
        tag = f"lambda={lam} on {_desc(t)}"
        skel_adj = adjacency_matrix(sk.forest)
        straight = straighten_basis(t, report.basis)
        res.check(
            is_straight(t, straight.vectors, straight.straight_order),
            lambda: f"straightened basis not straight {tag}",
        )
        projected = []
        for b in straight.vectors:
            s = project_eigenvector(t, lam, b, sk)
            projected.append(s)
            pat = component_pattern(sk, t, b)
            got = {c for c, a in zip(sk.forest.vertices, s) if a}
            res.check(
                verify_eigenvector(skel_adj, 0, s) and got == set(pat),
                lambda: f"projection pattern/verification {tag}",
            )
            back = lift_null_vector(t, lam, s, sk)
            res.check(
                verify_eigenvector(t, lam, back) and component_pattern(sk, t, back) == pat,
                lambda: f"lift round trip {tag}",
            )
        res.check(rank(projected) == mult, lambda: f"projected straight basis dependent {tag}")
        lifted = [lift_null_vector(t, lam, s, sk) for s in kernel_basis(sk.forest)]
        res.check(
            rank(lifted) == mult and all(verify_eigenvector(t, lam, x) for x in lifted),
            lambda: f"lifted skeleton kernel basis is not an eigenspace basis {tag}",
        )


def _component_criterion(t: Forest) -> bool:
    """Every eigen-component for 1 has a +-1 eigenvector, computed without the
    package's support or reduction code."""
    zero = always_zero_by_rank(t, 1)
    rest = t.induced(v for v in t.vertices if v not in zero)
    from .graph import component_sets

    return all(pm1_eigenvectors(t.induced(c), 1) for c in component_sets(rest))


def check_simple_basis(t: Forest, res: SuiteResult) -> None:
    if multiplicity(t, 1) == 0:
        return
    res.instances += 1
    tag = _desc(t)
    expect = _component_criterion(t)
    got = has_simply_structured_basis(t, 1)
    res.check(got == expect, lambda: f"criterion mismatch ({got} vs {expect}) on {tag}")
    res.check(has_simply_structured_basis(t, -1) == got, lambda: f"-1 disagrees with 1 on {tag}")
    if not got:
        return
    mult = multiplicity(t, 1)
    for lam in (1, -1):
        basis = simply_structured_basis(t, lam)
        res.check(
            len(basis) == mult
            and rank(basis) == mult
            and all(set(x) <= {0, 1, -1} and verify_eigenvector(t, lam, x) for x in basis),
            lambda: f"simple basis for {lam} invalid on {tag}",
        )
    flipped = [flip_signs(t, x) for x in simply_structured_basis(t, 1)]
    res.check(flipped == simply_structured_basis(t, -1), lambda: f"flip mismatch on {tag}")


TREE_SUITES = {
    "matching_nullity": check_matching_nullity,
    "kernel_basis": check_kernel_basis,
    "skeleton_multiplicity": check_skeleton_multiplicity,
    "transfer": check_transfer,
    "simply_structured": check_simple_basis,
}


def run_tree_suites(exhaustive_n: int, samples: int, seed: int, names=None) -> dict:
    """Run the selected per-tree suites over one shared pass of instances."""
    names = list(TREE_SUITES) if names is None else list(names)
    out = {name: SuiteResult(name) for name in names}
    for t in tree_instances(exhaustive_n, samples, seed):
        for name in names:
            if name != "simply_structured":
                out[name].instances += 1
            TREE_SUITES[name](t, out[name])
    return out


# -- suite 5: class C -----------------------------------------------------


def gadget_stack(n: int) -> Forest:
    """A class C tree on n = 2 mod 4 vertices, grown from K2 by gadgets."""
    if n % 4 != 2 or n < 2:
        raise ValueError("n must be 2 mod 4")
    vertices = ["0", "1"]
    edges = [("0", "1")]
    anchor = "0"
    while len(vertices) < n:
        k = len(vertices)
        u0, u1, y, w = (str(k + i) for i in range(4))
        vertices += [u0, u1, y, w]
        edges += [(anchor, y), (y, u0), (y, u1), (anchor, w)]
        anchor = y
    return Forest(vertices, edges)


def run_class_c_suite(exhaustive_n: int, samples: int, seed: int, max_n: int = 10) -> SuiteResult:
    res = SuiteResult("class_C")
    rng = random.Random(seed)

    def one(t: Forest):
        res.instances += 1
        got = is_class_C(t)
        oracle = bool(pm1_eigenvectors(t, 1))
        res.check(got.member == oracle, lambda: f"membership {got.member} vs oracle {oracle} on {_desc(t)}")
        if got.member:
            res.check(len(t) % 4 == 2, lambda: f"member with n={len(t)}")
            res.check(multiplicity(t, 1) == 1, lambda: f"member with multiplicity != 1: {_desc(t)}")
            res.check(
                all(a in (1, -1) for a in got.certificate) and verify_eigenvector(t, 1, got.certificate),
                lambda: f"bad certificate on {_desc(t)}",
            )

    for n in range(1, max_n + 1):
        for t in unlabeled_trees(n):
            one(t)
    # labelled trees cover the vertex-order dependence of the reduction search
    for n in range(2, min(exhaustive_n, max_n) + 1):
        for t in all_labeled_trees(n):
            one(t)
    for n in range(exhaustive_n + 1, max_n + 1):
        for _ in range(samples):
            one(random_tree(n, rng))
    for n in range(2, 15, 4):
        t = gadget_stack(n)
        res.check(is_class_C(t).member, f"gadget stack on {n} vertices is not a member")
    return res


# -- suite 7: composition -------------------------------------------------

NEGATIVE_CONTROL = {
    # meta skeleton core with forced edge p-q; blown up, eigenvalue 1 gets
    # multiplicity 2 instead of the predicted 1
    "meta_skeleton": "m c1\nm c2\nm p\np q",
    "lambda": 1,
    "replacements": {"c1": "a b", "c2": "a b"},
}


def negative_control():
    doc = NEGATIVE_CONTROL
    spec = MetaSkeletonSpec(parse_graph(doc["meta_skeleton"]), frozenset(), Fraction(doc["lambda"]))
    reps = {}
    for s, edges in doc["replacements"].items():
        r = parse_graph(edges)
        reps[s] = Replacement(r, r.vertices[0])
    return spec, BlowupPlan(reps)


def run_composition_suite(count: int, seed: int, n_max: int = 6) -> SuiteResult:
    res = SuiteResult("composition")
    rng = random.Random(seed)
    lams = (0, 1, 2)
    for i in range(count):
        lam = lams[i % len(lams)]
        ing = generate_ingredients(lam, n_max, seed)
        spec = random_meta_skeleton(lam, rng)
        res.instances += 1
        bad = validate_meta_skeleton(spec)
        res.check(not bad, lambda: f"generated spec invalid: {bad[0]}")
        if bad:
            continue
        result = blow_up(spec, random_plan(spec, ing, rng))
        failures = verify_blowup(spec, result)
        res.check(not failures, lambda: f"{failures[0]} for lambda={lam} on {_desc(result.tree)}")
    spec, plan = negative_control()
    res.check(
        any(v.condition == "forced_edge" for v in validate_meta_skeleton(spec)),
        "negative control does not violate the forced-edge condition",
    )
    result = blow_up(spec, plan, strict=False)
    res.check(bool(verify_blowup(spec, result)), "negative control unexpectedly matches its spec")
    return res


# -- suite 8: tree pattern matrices ---------------------------------------


def run_pattern_suite(count: int, seed: int, max_n: int = 10) -> SuiteResult:
    res = SuiteResult("tree_pattern")
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        m = random_pattern_matrix(n, rng)
        res.instances += 1
        for lam in range(-4, 5):
            dim = multiplicity(m, lam)
            if lam != 0 and dim == 0:
                continue
            tag = f"lambda={lam} n={n}"
            res.check(nylen_nullity(m, lam) == dim, lambda: f"component formula != nullity {tag}")
            if dim:
                res.check(multiplicity_via_matching(m, lam) == dim, lambda: f"weighted skeleton matching {tag}")
        if m.has_zero_diagonal():
            a = adjacency_matrix(m.pattern)
            res.check(
                pattern_support(m, 0).support == pattern_support(a, 0).support,
                lambda: f"support(M,0) != support(A,0) n={n}",
            )
            kb = kernel_basis(m.pattern)
            out = [transfer_null_pattern(m, x) for x in kb]
            res.check(
                all(verify_eigenvector(m, 0, y) for y in out) and rank(out) == len(kb) if kb else True,
                lambda: f"transfer failed n={n}",
            )
    return res


# -- driver ----------------------------------------------------------------


def run_all(exhaustive_n: int = 7, samples: int = 1000, seed: int = 0, composition: int = 100, patterns: int = 500):
    suites = run_tree_suites(exhaustive_n, samples, seed)
    suites["class_C"] = run_class_c_suite(min(exhaustive_n, 8), min(samples, 2000), seed)
    suites["composition"] = run_composition_suite(composition, seed)
    suites["tree_pattern"] = run_pattern_suite(patterns, seed)
    return suites
