"""Command-line surface tying the library together.

Exit codes: 0 success, 1 validation or solver failure, 2 parse error.
All output is deterministic: vertex order is the declaration order of the
input file, rationals print as p/q in lowest terms (integers without /1).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .blowup import blowup_edge, blowup_smooth
from .contact import inner_contact
from .fileformat import (
    GraphDocument,
    GraphParseError,
    document_to_json,
    format_rational,
    parse,
    serialize,
)
from .graphs import Divisor, DualGraph, EdgePoint, edge_lengths, validate
from .linalg import SingularMatrixError
from .polar import NoLNodesError, enumerate_admissible
from .solver import (
    InvariantBundle,
    NonIntegralMultiplicityError,
    NonPositiveMultiplicityError,
    le_greuel_balance,
    solve_inner_rates,
    solve_multiplicities,
    verify_laplacian_identity,
)

__all__ = ["main", "run"]


class CommandError(Exception):
    """User-facing failure; maps to exit code 1."""


def _rational_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _vector_line(g: DualGraph, values) -> str:
    return "  ".join(
        f"{vd.id} {format_rational(Fraction(values[i]))}" for i, vd in enumerate(g.vertices)
    )


def _vector_json(g: DualGraph, values, rational: bool) -> dict:
    if rational:
        return {vd.id: _rational_json(Fraction(values[i])) for i, vd in enumerate(g.vertices)}
    return {vd.id: int(values[i]) for i, vd in enumerate(g.vertices)}


def _point_label(g: DualGraph, pt) -> str:
    if isinstance(pt, EdgePoint):
        e = pt.edge
        return f"{e.u}-{e.v}#{e.key}@{format_rational(pt.offset)}"
    return str(pt)


def _divisor_items(g: DualGraph, d: Divisor):
    def sort_key(item):
        pt, _ = item
        if isinstance(pt, EdgePoint):
            edge_pos = g.edges.index(pt.edge) if pt.edge in g.edges else len(g.edges)
            return (1, edge_pos, pt.offset)
        return (0, g.index(pt), Fraction(0))

    return sorted(d.items(), key=sort_key)


def _divisor_text(g: DualGraph, d: Divisor) -> str:
    items = _divisor_items(g, d)
    if not items:
        return "0"
    parts: list[str] = []
    for idx, (pt, c) in enumerate(items):
        label = _point_label(g, pt)
        if idx == 0:
            parts.append(f"{c}[{label}]")
        else:
            sign = "+" if c >= 0 else "-"
            parts.append(f"{sign} {abs(c)}[{label}]")
    return " ".join(parts)


def _divisor_json(g: DualGraph, d: Divisor) -> dict:
    return {_point_label(g, pt): c for pt, c in _divisor_items(g, d)}


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load(path: str) -> GraphDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc}") from exc
    return parse(text)


def _validated(doc: GraphDocument) -> DualGraph:
    report = validate(doc.graph)
    if not report.ok:
        raise CommandError("validation failed: " + "; ".join(report.issues))
    return doc.graph


def _bundle(doc: GraphDocument) -> InvariantBundle:
    return solve_inner_rates(_validated(doc))


def cmd_check(args) -> int:
    doc = _load(args.file)
    report = validate(doc.graph)
    if args.json:
        _emit_json(
            {
                "graph": doc.name,
                "connected": report.connected,
                "loop_free": report.loop_free,
                "negative_definite": report.negative_definite,
                "l_node_present": report.has_l_node,
                "valid": report.ok,
                "issues": list(report.issues),
            }
        )
    else:
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        print(f"graph: {doc.name}")
        print(f"connected: {yn(report.connected)}")
        print(f"loop-free: {yn(report.loop_free)}")
        print(f"negative-definite: {yn(report.negative_definite)}")
        print(f"l-node-present: {yn(report.has_l_node)}")
        print(f"valid: {yn(report.ok)}")
    return 0 if report.ok else 1


def cmd_multiplicities(args) -> int:
    doc = _load(args.file)
    m = solve_multiplicities(_validated(doc))
    if args.json:
        _emit_json({"m": _vector_json(doc.graph, m, rational=False)})
    else:
        print(_vector_line(doc.graph, m))
    return 0


def cmd_rates(args) -> int:
    doc = _load(args.file)
    bundle = _bundle(doc)
    if args.json:
        _emit_json(
            {
                "q": _vector_json(doc.graph, bundle.q, rational=True),
                "a": _vector_json(doc.graph, bundle.a, rational=True),
                "warnings": [w.message for w in bundle.warnings],
            }
        )
    else:
        print(_vector_line(doc.graph, bundle.q))
        print("a: " + _vector_line(doc.graph, bundle.a))
        for w in bundle.warnings:
            print(f"warning: {w.message}")
    return 0


def cmd_laplacian(args) -> int:
    doc = _load(args.file)
    g = doc.graph
    bundle = _bundle(doc)
    check = verify_laplacian_identity(g, bundle)
    rhs = bundle.K_div + 2 * bundle.L_div - bundle.P_div
    if args.json:
        _emit_json(
            {
                "laplacian": _divisor_json(g, check.laplacian),
                "K": _divisor_json(g, bundle.K_div),
                "L": _divisor_json(g, bundle.L_div),
                "P": _divisor_json(g, bundle.P_div),
                "rhs": _divisor_json(g, rhs),
                "identity_holds": check.holds,
            }
        )
    else:
        print(f"laplacian: {_divisor_text(g, check.laplacian)}")
        print(f"K: {_divisor_text(g, bundle.K_div)}")
        print(f"2L: {_divisor_text(g, 2 * bundle.L_div)}")
        print(f"P: {_divisor_text(g, bundle.P_div)}")
        print(f"K+2L-P: {_divisor_text(g, rhs)}")
        print(f"laplacian-identity: {'pass' if check.holds else 'fail'}")
        for line in check.mismatches:
            print(f"mismatch: {line}")
    return 0


def cmd_le_greuel(args) -> int:
    doc = _load(args.file)
    g = _validated(doc)
    m = solve_multiplicities(g)
    result = le_greuel_balance(g, m)
    if args.json:
        _emit_json(
            {
                "m_X": result.m_x,
                "m_Pi": result.m_pi,
                "chi_F": result.chi_fiber,
                "holds": result.holds,
            }
        )
    else:
        print(f"m(X): {result.m_x}")
        print(f"m(Pi): {result.m_pi}")
        print(f"chi(F): {result.chi_fiber}")
        print(f"balance: {'holds' if result.holds else 'fails'}")
    return 0


def cmd_blowup(args) -> int:
    doc = _load(args.file)
    g = _validated(doc)
    if doc.fully_annotated:
        m = tuple(doc.m_annotations[vid] for vid in g.ids)
        q = tuple(doc.q_annotations[vid] for vid in g.ids)
    else:
        bundle = solve_inner_rates(g)
        m, q = bundle.m, bundle.q
    try:
        if args.vertex is not None:
            result = blowup_smooth(g, m, q, args.vertex, args.transfer_l, args.transfer_p)
        else:
            if args.transfer_l or args.transfer_p:
                raise CommandError("arrow transfer is only available with --vertex")
            a, b = args.edge
            result = blowup_edge(g, m, q, g.edge_between(a, b))
    except KeyError as exc:
        raise CommandError(str(exc.args[0]) if exc.args else str(exc)) from exc
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    out = GraphDocument(
        f"{doc.name}-blowup",
        result.graph,
        m_annotations={vid: result.m[i] for i, vid in enumerate(result.graph.ids)},
        q_annotations={vid: result.q[i] for i, vid in enumerate(result.graph.ids)},
    )
    if args.json:
        _emit_json(document_to_json(out))
    else:
        print(serialize(out), end="")
    return 0


def cmd_contact(args) -> int:
    doc = _load(args.file)
    bundle = _bundle(doc)
    g = doc.graph
    for vid in (args.a, args.b):
        if vid not in g.ids:
            raise CommandError(f"unknown vertex {vid!r}")
    result = inner_contact(g, bundle.q_by_id(), args.a, args.b)
    if args.json:
        _emit_json(
            {
                "exponent": _rational_json(result.exponent),
                "witness_path": list(result.witness_path),
                "injective_paths": result.all_paths_count,
            }
        )
    else:
        print(f"contact({args.a}, {args.b}): {format_rational(result.exponent)}")
        print("witness: " + " ".join(result.witness_path))
        print(f"injective-paths: {result.all_paths_count}")
    return 0


def cmd_enumerate_polar(args) -> int:
    doc = _load(args.file)
    g = _validated(doc)
    enum = enumerate_admissible(g, strict=not args.relaxed)
    if args.json:
        _emit_json(
            {
                "total_polar_weight": enum.total_weight,
                "configs": [
                    {
                        "p": _vector_json(g, cfg.p, rational=False),
                        "q": _vector_json(g, cfg.q, rational=True),
                        "a": _vector_json(g, cfg.a, rational=False),
                    }
                    for cfg in enum.configs
                ],
                "diagnostic": enum.diagnostic,
            }
        )
    else:
        print(f"total-polar-weight: {enum.total_weight}")
        print(f"configs: {len(enum.configs)}")
        for idx, cfg in enumerate(enum.configs, start=1):
            print(f"config {idx} p: " + _vector_line(g, cfg.p))
            print(f"config {idx} q: " + _vector_line(g, cfg.q))
        if enum.diagnostic:
            print(f"diagnostic: {enum.diagnostic}")
    return 0


def cmd_export_dot(args) -> int:
    doc = _load(args.file)
    g = doc.graph
    bundle = _bundle(doc)
    lengths = edge_lengths(g, bundle.m, args.metric)
    lines = [f'graph "{doc.name}" {{', "  node [shape=circle];"]
    for i, vd in enumerate(g.vertices):
        label = f"{vd.id}\\nm={bundle.m[i]},q={format_rational(bundle.q[i])}"
        lines.append(f'  "{vd.id}" [label="{label}"];')
    for e in g.edges:
        lines.append(f'  "{e.u}" -- "{e.v}" [label="len={format_rational(lengths[e])}"];')
    lines.append("}")
    print("\n".join(lines))
    return 0


def cmd_report(args) -> int:
    from .report import write_report  # deferred: pulls in matplotlib

    doc = _load(args.file)
    bundle = _bundle(doc)
    paths = write_report(doc, bundle, Path(args.outdir), metric=args.metric)
    for p in paths:
        print(f"wrote {p}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="innerrates",
        description="Exact metric invariants of decorated dual resolution graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--metric",
        choices=("skeletal", "lcm"),
        default="skeletal",
        help="metric used for displayed edge lengths",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, **kwargs):
        p = sub.add_parser(name, parents=[common], help=help_text, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "validate a graph file")
    p.add_argument("file")

    p = add("multiplicities", cmd_multiplicities, "solve the multiplicity vector")
    p.add_argument("file")

    p = add("rates", cmd_rates, "solve the inner rates")
    p.add_argument("file")

    p = add("laplacian", cmd_laplacian, "Laplacian divisor and its decomposition")
    p.add_argument("file")

    p = add("le-greuel", cmd_le_greuel, "multiplicity balance m(Pi) = m(X) - chi(F)")
    p.add_argument("file")

    p = add("blowup", cmd_blowup, "blow up a vertex or an edge")
    p.add_argument("file")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--vertex", metavar="V", help="blow up a smooth point on V")
    target.add_argument("--edge", nargs=2, metavar=("A", "B"), help="blow up the edge A-B")
    p.add_argument("--transfer-l", type=int, default=0, dest="transfer_l")
    p.add_argument("--transfer-p", type=int, default=0, dest="transfer_p")

    p = add("contact", cmd_contact, "inner contact exponent of two vertices")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")

    p = add("enumerate-polar", cmd_enumerate_polar, "all admissible polar configurations")
    p.add_argument("file")
    p.add_argument(
        "--relaxed",
        action="store_true",
        help="allow rate 1 at vertices without hyperplane arrows",
    )

    p = add("export-dot", cmd_export_dot, "DOT graph with m/q and length labels")
    p.add_argument("file")

    p = add("report", cmd_report, "write a CSV table and a rendered figure")
    p.add_argument("file")
    p.add_argument("--outdir", default=".", help="output directory")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        CommandError,
        NoLNodesError,
        NonIntegralMultiplicityError,
        NonPositiveMultiplicityError,
        SingularMatrixError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())
