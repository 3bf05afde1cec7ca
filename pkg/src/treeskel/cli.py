"""Command-line interface.

Every subcommand prints one JSON report with the keys ``command``,
``inputs``, ``results`` and ``provenance``, in that order. Rationals are
written as "p/q" or integer strings. Exit status: 0 on success, 1 when the
input is well formed but outside an operation's domain (or a verification
suite fails), 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .composition import BlowupError, blow_up, parse_spec_document, validate_meta_skeleton, verify_blowup
from .errors import DomainError
from .graph import Forest, GraphError, component_sets, read_graph, serialize_graph
from .linalg import (
    TreePatternMatrix,
    adjacency_matrix,
    eigenspace_basis,
    format_rational,
    integer_spectrum,
    multiplicity,
    parse_rational,
    verify_eigenvector,
)
from .matching import classify_vertices, kernel_basis
from .simply_structured import is_class_C, simply_structured_basis
from .skeleton import meta_skeleton, multiplicity_via_matching, skeleton, support_report
from .tree_pattern import nylen_nullity, pattern_support, transfer_null_pattern


class InputError(Exception):
    """Unreadable or malformed input (exit status 2)."""


def _fmt_vec(x) -> list[str]:
    return [format_rational(a) for a in x]


def _checked(m, lam, vectors) -> list[list[str]]:
    # every emitted eigenvector is re-verified against the input
    for x in vectors:
        if not verify_eigenvector(m, lam, x):
            raise RuntimeError("refusing to emit a vector that fails verification")
    return [_fmt_vec(x) for x in vectors]


def _sorted_sets(sets, f: Forest) -> list[list[str]]:
    return [f.sort_key(s) for s in sorted(sets, key=lambda s: min(f.index(v) for v in s))]


def _load_tree(path: str) -> Forest:
    try:
        t = read_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None
    if not t.is_tree():
        raise DomainError(f"{path} is a forest with {len(component_sets(t))} components, not a tree")
    return t


def _lambda(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- subcommands ----------------------------------------------------------


def cmd_spectrum(args):
    t = _load_tree(args.graph)
    spec = integer_spectrum(t)
    cls = classify_vertices(t)
    return {"graph": args.graph}, {
        "order": len(t),
        "integer_eigenvalues": {str(k): v for k, v in sorted(spec.items())},
        "integer_multiplicity_total": sum(spec.values()),
        "matching_number": len(cls.matching),
        "nullity": len(t) - 2 * len(cls.matching),
    }


def cmd_eigenspace(args):
    t = _load_tree(args.graph)
    lam = _lambda(args.lam)
    basis = eigenspace_basis(t, lam)
    rep = support_report(t, lam, basis)
    return {"graph": args.graph, "lambda": format_rational(lam)}, {
        "vertex_order": list(t.vertices),
        "multiplicity": len(basis),
        "basis": _checked(t, lam, basis.vectors),
        "always_zero": t.sort_key(rep.always_zero),
        "support": t.sort_key(rep.support),
        "boundary": t.sort_key(rep.boundary),
        "eigen_components": [list(c) for c in rep.eigen_components],
    }


def _skeleton_doc(sk) -> dict:
    f = sk.forest
    vertices = []
    for v in f.vertices:
        if sk.is_contracted(v):
            vertices.append({"label": v, "kind": "contracted", "members": list(sk.kind[v].members)})
        else:
            vertices.append({"label": v, "kind": "boundary", "vertex": sk.kind[v].vertex})
    return {"vertices": vertices, "edges": [list(e) for e in f.edges]}


def cmd_skeleton(args):
    t = _load_tree(args.graph)
    lam = _lambda(args.lam)
    sk = skeleton(t, lam)
    ms = meta_skeleton(t, lam)
    if args.dot:
        try:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(sk.to_dot())
        except OSError as exc:
            raise InputError(f"cannot write {args.dot}: {exc.strerror}") from None
    return {"graph": args.graph, "lambda": format_rational(lam), "dot": args.dot}, {
        "skeleton": _skeleton_doc(sk),
        "multiplicity_via_matching": multiplicity_via_matching(t, lam, sk),
        "multiplicity_exact": multiplicity(t, lam),
        "meta_skeleton": {
            "vertices": list(ms.tree.vertices),
            "edges": [list(e) for e in ms.tree.edges],
            "non_eigen_vertices": ms.tree.sort_key(ms.non_eigen_vertices),
        },
    }


def cmd_kernel_basis(args):
    t = _load_tree(args.graph)
    cls = classify_vertices(t)
    vecs = kernel_basis(t, cls)
    return {"graph": args.graph}, {
        "vertex_order": list(t.vertices),
        "matching": _sorted_sets(cls.matching, t),
        "missable": t.sort_key(cls.K),
        "never_missed": t.sort_key(cls.N),
        "missed_by_matching": t.sort_key(cls.K_M),
        "forced_edges": _sorted_sets(cls.forced_edges, t),
        "basis": _checked(t, 0, vecs),
    }


def cmd_classc(args):
    t = _load_tree(args.graph)
    res = is_class_C(t)
    out = {"member": res.member}
    if res.member:
        out["vertex_order"] = list(t.vertices)
        out["certificate"] = _checked(t, 1, [res.certificate])[0]
        out["reduction"] = [
            {"kept": s.kept, "removed": list(s.removed)} for s in res.trace.steps
        ]
        out["terminal"] = list(res.trace.terminal)
    return {"graph": args.graph}, out


def cmd_basis(args):
    t = _load_tree(args.graph)
    lam = _lambda(args.lam)
    vecs = simply_structured_basis(t, lam)
    return {"graph": args.graph, "lambda": format_rational(lam)}, {
        "vertex_order": list(t.vertices),
        "multiplicity": len(vecs),
        "basis": _checked(t, lam, vecs),
    }


def cmd_compose(args):
    try:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.spec}: {exc.strerror}") from None
    try:
        spec, plan = parse_spec_document(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.spec}: {exc}") from None
    problems = validate_meta_skeleton(spec)
    if problems:
        raise BlowupError(problems)
    result = blow_up(spec, plan)
    failures = verify_blowup(spec, result)
    return {"spec": args.spec, "lambda": format_rational(spec.lam)}, {
        "tree": serialize_graph(result.tree).splitlines(),
        "order": len(result.tree),
        "predicted_multiplicity": result.predicted_multiplicity,
        "exact_multiplicity": multiplicity(result.tree, spec.lam),
        "verification_failures": failures,
    }


def cmd_pattern(args):
    try:
        with open(args.matrix, encoding="utf-8") as fh:
            m = TreePatternMatrix.from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {args.matrix}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.matrix}: {exc}") from None
    lam = _lambda(args.lam)
    if not m.pattern.is_tree():
        raise DomainError("the matrix pattern is a forest, not a tree")
    ps = pattern_support(m, lam)
    basis = eigenspace_basis(m, lam)
    out = {
        "vertex_order": list(m.vertex_order),
        "support": m.pattern.sort_key(ps.support),
        "support_components": ps.induced_components,
        "adjacent_outside_support": ps.outside_adjacent,
        "predicted_nullity": nylen_nullity(m, lam),
        "exact_nullity": len(basis),
        "basis": _checked(m, lam, basis.vectors),
        "caveats": [],
    }
    if not m.is_value_symmetric():
        out["caveats"].append("matrix is not value symmetric; the support formula is only established for symmetric matrices")
    if lam == 0 and m.has_zero_diagonal():
        kb = kernel_basis(m.pattern)
        out["transferred_pattern_basis"] = _checked(m, 0, [transfer_null_pattern(m, x) for x in kb])
        out["support_matches_adjacency"] = ps.support == pattern_support(adjacency_matrix(m.pattern), 0).support
    return {"matrix": args.matrix, "lambda": format_rational(lam)}, out


def cmd_verify(args):
    from . import harness

    seed = args.seed
    if seed is None:
        env = os.environ.get("SEED")
        try:
            seed = int(env) if env is not None else 0
        except ValueError:
            raise InputError(f"SEED must be an integer, got {env!r}") from None
    suites = harness.run_all(
        exhaustive_n=args.exhaustive_n,
        samples=args.samples,
        seed=seed,
        composition=args.compositions,
        patterns=args.patterns,
    )
    results = {name: s.as_dict() for name, s in suites.items()}
    passed = all(s.passed for s in suites.values())
    inputs = {
        "exhaustive_n": args.exhaustive_n,
        "samples": args.samples,
        "compositions": args.compositions,
        "patterns": args.patterns,
    }
    return inputs, {"all_passed": passed, "suites": results}, seed, 0 if passed else 1


COMMANDS = {
    "spectrum": cmd_spectrum,
    "eigenspace": cmd_eigenspace,
    "skeleton": cmd_skeleton,
    "kernel-basis": cmd_kernel_basis,
    "classc": cmd_classc,
    "basis": cmd_basis,
    "compose": cmd_compose,
    "pattern": cmd_pattern,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treeskel", description="Exact analysis of tree eigenspaces.")
    p.add_argument("--version", action="version", version=f"treeskel {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", help="integer eigenvalues and matching data of a tree")
    s.add_argument("graph")
    s = sub.add_parser("eigenspace", help="exact eigenspace basis and support")
    s.add_argument("graph")
    s.add_argument("--lambda", dest="lam", required=True, metavar="P/Q")
    s = sub.add_parser("skeleton", help="skeleton forest and meta skeleton")
    s.add_argument("graph")
    s.add_argument("--lambda", dest="lam", required=True, metavar="P/Q")
    s.add_argument("--dot", metavar="PATH", help="also write the skeleton as a DOT file")
    s = sub.add_parser("kernel-basis", help="{0,1,-1} null space basis from a maximum matching")
    s.add_argument("graph")
    s = sub.add_parser("classc", help="test for a {1,-1} eigenvector for eigenvalue 1")
    s.add_argument("graph")
    s = sub.add_parser("basis", help="simply structured eigenspace basis")
    s.add_argument("graph")
    s.add_argument("--lambda", dest="lam", required=True, choices=["0", "1", "-1"])
    s = sub.add_parser("compose", help="blow up a meta skeleton spec")
    s.add_argument("--spec", required=True)
    s = sub.add_parser("pattern", help="support and nullity of a tree pattern matrix")
    s.add_argument("matrix")
    s.add_argument("--lambda", dest="lam", required=True, metavar="P/Q")
    s = sub.add_parser("verify", help="run the property suites against exact oracles")
    s.add_argument("--exhaustive-n", type=int, default=7)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=None, help="defaults to $SEED, then 0")
    s.add_argument("--compositions", type=int, default=100)
    s.add_argument("--patterns", type=int, default=500)
    return p


def _report(command, inputs, results, seed=None) -> str:
    doc = {
        "command": command,
        "inputs": inputs,
        "results": results,
        "provenance": {"package": "treeskel", "version": __version__, "seed": seed},
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"treeskel: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"treeskel: refused: {exc}", file=sys.stderr)
        return 1
    if len(out) == 4:
        inputs, results, seed, code = out
    else:
        (inputs, results), seed, code = out, None, 0
    sys.stdout.write(_report(args.command, inputs, results, seed))
    return code


if __name__ == "__main__":
    sys.exit(main())
