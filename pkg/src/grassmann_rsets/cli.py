"""Command-line entry point: recognition, degree search and the verifiers.

Exit codes: 0 when the run succeeds or the checked property holds, 1 when a
verifier finds a counterexample (or ``check``/``exact`` answer no), 2 on
usage errors, malformed documents and exceeded budgets.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .field import FieldError, field_from_json, make_field
from .graph import automorphism_group_order, grassmann_graph, parse_edge_list
from .involutions import (
    CharacteristicTwo,
    generated_group_order,
    verify_adjacency_transvection,
    verify_commuting_preserves_eigenspaces,
    verify_commuting_iff_rset,
)
from .linalg import sl_order
from .maps import collineation_and_duality_subgroup_order
from .report import Report, timed
from .rset import (
    DEFAULT_DEG_CAP,
    SearchCapExceeded,
    degree_search,
    find_associated_basis,
    is_exact,
    verify_degree_bound,
    verify_exactness_threshold,
)
from .subspace import BudgetExceeded, canonicalize

COMMANDS = (
    "check",
    "deg",
    "exact",
    "verify-thm21",
    "verify-thm23",
    "graph-aut",
    "verify-prop31",
    "verify-lemma31",
    "verify-adjacency",
    "group-order",
)


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grassmann-rsets", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--p", type=int)
    parser.add_argument("--e", type=int, default=1)
    parser.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=10_000, help="sample count in sampled mode")
    parser.add_argument("--budget", type=int, help="element/vertex budget for closures and enumerations")
    parser.add_argument("--cap", type=int, default=DEFAULT_DEG_CAP, help="maximum additions tried by the degree search")
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--input", help="R-set document (check/deg/exact) or edge list (graph-aut)")
    parser.add_argument("--output", help="write the JSON report here instead of standard output")
    parser.add_argument("--export-edges", help="graph-aut: also write the graph as an edge list")
    return parser


def _need(args, *names):
    missing = [f"--{m}" for m in names if getattr(args, m) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' '.join(missing)}")


def _field(args):
    _need(args, "p")
    return make_field(args.p, args.e)


def load_rset_document(path: str):
    """Read ``{"field", "n", "k", "subspaces"}`` into ``(field, n, k, members)``."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        F = field_from_json(doc["field"])
        n = int(doc["n"])
        k = doc.get("k")
        members = [canonicalize(m, F, n) for m in doc["subspaces"]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed R-set document: {exc}") from exc
    for S, m in zip(members, doc["subspaces"]):
        if S.dim != len(m):
            raise UsageError("document rows must be linearly independent")
        if k is not None and S.dim != k:
            raise UsageError(f"document declares k={k} but has a {S.dim}-dimensional member")
    return F, n, (None if k is None else int(k)), members


def _document_params(F, n, k, path):
    return {"n": n, "k": k, "p": F.p, "e": F.e, "input": os.path.basename(path)}


def _cmd_check(args) -> Report:
    _need(args, "input")
    F, n, k, members = load_rset_document(args.input)
    report = Report("is_rset", _document_params(F, n, k, args.input))
    with timed(report):
        system = find_associated_basis(members, n, F)
    report.extra["is_rset"] = system is not None
    if system is not None:
        report.extra["basis"] = [list(L.rows[0]) for L in system.sorted_lines]
    return report


def _doc_k(k, members):
    if k is not None:
        return k
    dims = {S.dim for S in members}
    if len(dims) != 1:
        raise UsageError("deg/exact need a document whose subspaces share one dimension")
    return dims.pop()


def _cmd_deg(args) -> Report:
    _need(args, "input")
    F, n, k, members = load_rset_document(args.input)
    k = _doc_k(k, members)
    report = Report("degree_of_inexactness", dict(_document_params(F, n, k, args.input), cap=args.cap))
    with timed(report):
        result = degree_search(members, n, F, k, args.cap)
    report.extra["degree"] = result.degree
    report.extra["minimal_supersets"] = len(result.minimal_supersets)
    return report


def _cmd_exact(args) -> Report:
    _need(args, "input")
    F, n, k, members = load_rset_document(args.input)
    k = _doc_k(k, members)
    report = Report("is_exact", _document_params(F, n, k, args.input))
    with timed(report):
        report.extra["is_exact"] = is_exact(members, n, F, k)
    return report


def _cmd_thm(verifier):
    def cmd(args) -> Report:
        _need(args, "n", "k")
        return verifier(args.n, args.k, _field(args), cap=args.cap, workers=args.workers)

    return cmd


def _cmd_graph_aut(args) -> Report:
    budget = args.budget or 256
    if args.input:
        with open(args.input) as fh:
            graph = parse_edge_list(fh.read())
        report = Report("graph_automorphisms", {"input": os.path.basename(args.input), "budget": budget})
        with timed(report):
            report.extra["aut_order"] = automorphism_group_order(graph, budget)
    else:
        _need(args, "n", "k")
        F = _field(args)
        report = Report("graph_automorphisms", {"n": args.n, "k": args.k, "p": F.p, "e": F.e, "budget": budget})
        with timed(report):
            graph = grassmann_graph(args.n, args.k, F)
            order = automorphism_group_order(graph, budget)
            expected = collineation_and_duality_subgroup_order(args.n, args.k, F)
        report.extra.update(aut_order=order, collineation_duality_order=expected)
        if order != expected:
            report.counterexamples.append({"aut_order": order, "collineation_duality_order": expected})
    report.extra.update(vertices=len(graph), edges=len(graph.edges()))
    if args.export_edges:
        with open(args.export_edges, "w") as fh:
            fh.write(graph.edge_list_text())
    return report


def _cmd_prop31(args) -> Report:
    _need(args, "n", "k")
    return verify_commuting_iff_rset(args.n, args.k, _field(args), mode=args.mode, samples=args.samples, seed=args.seed)


def _cmd_lemma31(args) -> Report:
    _need(args, "n", "k")
    return verify_commuting_preserves_eigenspaces(args.n, args.k, _field(args), budget=args.budget or 1 << 20)


def _cmd_adjacency(args) -> Report:
    _need(args, "n", "k")
    return verify_adjacency_transvection(args.n, args.k, _field(args), mode=args.mode, samples=args.samples, seed=args.seed)


def _cmd_group_order(args) -> Report:
    _need(args, "n", "k")
    F = _field(args)
    budget = args.budget or 1_000_000
    report = Report("generated_group_order", {"n": args.n, "k": args.k, "p": F.p, "e": F.e, "budget": budget})
    with timed(report):
        order = generated_group_order(args.k, args.n, F, budget)
    # Involutions of even (n-k) have determinant 1 and generate SL; otherwise
    # determinants are +-1.
    sl = sl_order(F.q, args.n)
    expected = sl if (args.n - args.k) % 2 == 0 else 2 * sl
    report.extra.update(group_order=order, expected_order=expected)
    if order != expected:
        report.counterexamples.append({"group_order": order, "expected_order": expected})
    return report


HANDLERS = {
    "check": _cmd_check,
    "deg": _cmd_deg,
    "exact": _cmd_exact,
    "verify-thm21": _cmd_thm(verify_degree_bound),
    "verify-thm23": _cmd_thm(verify_exactness_threshold),
    "graph-aut": _cmd_graph_aut,
    "verify-prop31": _cmd_prop31,
    "verify-lemma31": _cmd_lemma31,
    "verify-adjacency": _cmd_adjacency,
    "group-order": _cmd_group_order,
}


def _exit_code(command: str, report: Report) -> int:
    if not report.passed:
        return 1
    if command == "check":
        return 0 if report.extra["is_rset"] else 1
    if command == "exact":
        return 0 if report.extra["is_exact"] else 1
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        report = HANDLERS[args.command](args)
    except (UsageError, FieldError, CharacteristicTwo, BudgetExceeded, SearchCapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.params.setdefault("seed", args.seed)
    if args.command in ("verify-prop31", "verify-adjacency"):
        report.params["samples"] = args.samples if args.mode == "sampled" else None
    text = report.to_json()
    summary = report.summary()
    for key in ("is_rset", "is_exact", "degree", "aut_order", "group_order"):
        if key in report.extra:
            summary += f"; {key}={json.dumps(report.extra[key])}"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(summary)
    else:
        print(summary, file=sys.stderr)
        print(text)
    return _exit_code(args.command, report)


def main() -> None:
    sys.exit(run())
