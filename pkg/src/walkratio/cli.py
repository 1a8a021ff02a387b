"""Command-line interface.

Exit codes: 0 success, 1 domain error (e.g. graph not strongly
connected), 2 usage error.  Results go to stdout, diagnostics to
stderr.  Graph-reading commands accept ``--graph -`` for stdin, and
``construct`` emits the same edge-list format the readers accept, so
subcommands compose through pipes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, extremal, oracle, perron
from .digraph import (
    Digraph,
    complete_digraph,
    parse_edge_list,
    serialize_edge_list,
    to_dot,
)
from .errors import WalkratioError

EXACT_DEFAULT_LIMIT = 12  # exact mode is the default up to this many vertices


def _read_graph(path: str) -> Digraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return parse_edge_list(text)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _emit(rows: list[dict], as_json: bool) -> None:
    """Line-delimited output: "key value ..." text or one JSON object per row."""
    for row in rows:
        if as_json:
            print(json.dumps({k: _fmt(v) for k, v in row.items()}))
        else:
            print(" ".join(f"{k} {v}" for k, v in row.items()))


def _pick_mode(args, n: int) -> str:
    if args.exact and args.float:
        raise WalkratioError("--exact and --float are mutually exclusive")
    if args.exact:
        return "exact"
    if args.float:
        return "float"
    if n > EXACT_DEFAULT_LIMIT:
        # usage problem, not a domain one: the caller must choose
        print(
            f"graphs with more than {EXACT_DEFAULT_LIMIT} vertices need an "
            "explicit --exact or --float",
            file=sys.stderr,
        )
        raise SystemExit(2)
    return "exact"


def _solve_lines(g: Digraph, mode: str) -> list[dict]:
    rows: list[dict] = []
    if mode == "exact":
        dist = perron.solve_exact(g)
        for v, value in enumerate(dist.entries):
            rows.append({"index": v, "value": str(value)})
        rows.append({"ratio": str(perron.principal_ratio(dist))})
    else:
        dist = perron.solve_power(g)
        print(f"residual {dist.residual:.3e}", file=sys.stderr)
        for v, value in enumerate(dist.entries):
            rows.append({"index": v, "value": f"{value:.17g}"})
        rows.append({"ratio": f"{perron.principal_ratio(dist):.17g}"})
    return rows


def _cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    mode = _pick_mode(args, g.n)
    rows = _solve_lines(g, mode)
    if args.json:
        for row in rows:
            print(json.dumps(row))
    else:
        for row in rows:
            if "ratio" in row:
                print(f"ratio {row['ratio']}")
            else:
                print(f"{row['index']} {row['value']}")
    return 0


def _cmd_ratio(args) -> int:
    g = _read_graph(args.graph)
    mode = _pick_mode(args, g.n)
    if mode == "exact":
        value = str(perron.principal_ratio(perron.solve_exact(g)))
    else:
        value = f"{perron.principal_ratio(perron.solve_power(g)):.17g}"
    print(json.dumps({"ratio": value}) if args.json else value)
    return 0


_CONSTRUCTORS = {
    "d1": lambda args: extremal.construct_extremal(args.n, extremal.ExtremalVariant.D1),
    "d2": lambda args: extremal.construct_extremal(args.n, extremal.ExtremalVariant.D2),
    "d3": lambda args: extremal.construct_extremal(args.n, extremal.ExtremalVariant.D3),
    "complete": lambda args: complete_digraph(args.n),
    "degree-ce": lambda args: extremal.construct_degree_counterexample(args.n),
    "disc-ce": lambda args: extremal.construct_discrepancy_counterexample(
        args.m, args.k
    ),
    "chain": lambda args: extremal.chain_graph(args.m),
}


def _cmd_construct(args) -> int:
    needs_n = args.name in ("d1", "d2", "d3", "complete", "degree-ce")
    if needs_n and args.n is None:
        print(f"construct {args.name} requires --n", file=sys.stderr)
        return 2
    if args.name in ("disc-ce", "chain") and args.m is None:
        print(f"construct {args.name} requires --m", file=sys.stderr)
        return 2
    if args.name == "disc-ce" and args.k is None:
        print("construct disc-ce requires --k", file=sys.stderr)
        return 2
    g = _CONSTRUCTORS[args.name](args)
    sys.stdout.write(to_dot(g) if args.dot else serialize_edge_list(g))
    return 0


def _cmd_transform(args) -> int:
    g = _read_graph(args.graph)
    lp = extremal.LabeledPathGraph.from_digraph(g)
    if args.kind == "add-edge":
        result = extremal.add_edge_transform(lp)
    else:
        result = extremal.delete_edge_transform(lp)
    sys.stdout.write(serialize_edge_list(result))
    return 0


def _cmd_bound_check(args) -> int:
    g = _read_graph(args.graph)
    params = bounds.CertificateParams(
        Fraction(args.a), Fraction(args.b), Fraction(args.c),
        Fraction(args.d), Fraction(args.eps),
    )
    report = bounds.check_certificate(
        g, params, mode=args.mode, trials=args.trials, seed=args.seed
    )
    rows = [
        {"condition": "degree", "ok": report.degree_ok},
        {
            "condition": "discrepancy",
            "ok": report.discrepancy_ok,
            "mode": report.discrepancy_mode,
        },
        {"C": str(report.constant)},
        {"ratio_bound": str(report.ratio_bound)},
    ]
    if report.degree_witness is not None:
        v, dout, din = report.degree_witness
        rows.insert(1, {"degree_witness": f"vertex={v} out={dout} in={din}"})
    if report.discrepancy_witness is not None:
        s, t = report.discrepancy_witness
        rows.append({"discrepancy_witness": f"S={list(s)} T={list(t)}"})
    if report.gamma is not None:
        rows.append({"gamma": str(report.gamma)})
        rows.append({"gamma_within_bound": report.gamma_within_bound})
    _emit(rows, args.json)
    return 0


def _cmd_bound_report(args) -> int:
    g = _read_graph(args.graph)
    report = bounds.extremal_structure_report(g)
    rows = [
        {"n": report.n},
        {"gamma": str(report.gamma)},
        {"dist_vmax_vmin": report.max_min_distance},
        {"distance_bound_ok": report.distance_bound_ok},
        {"half_factorial_applicable": report.half_factorial_applicable,
         "ok": report.half_factorial_ok},
        {"degree_checks_applicable": report.degree_checks_applicable,
         "head_ok": report.head_neighborhoods_ok,
         "floors_ok": report.degree_floors_ok},
        {"sole_out_neighbor_applicable": report.sole_out_neighbor_applicable,
         "ok": report.sole_out_neighbor_ok},
        {"degree_diameter_bound": bounds.degree_diameter_bound(g)},
        {"universal_bound": bounds.universal_ratio_bound(g.n)},
    ]
    _emit(rows, args.json)
    return 0


def _cmd_enumerate(args) -> int:
    if args.n > oracle.ENUMERATION_GUARD and args.force:
        print(
            f"warning: n={args.n} sweeps 2^{args.n * (args.n - 1)} graphs; "
            "this can take hours",
            file=sys.stderr,
        )
    report = oracle.max_principal_ratio_brute(args.n, jobs=args.jobs, force=args.force)
    rows = [
        {"n": report.n},
        {"total_digraphs": report.total_digraphs},
        {"strongly_connected": report.strongly_connected_count},
        {"max_ratio": str(report.max_ratio)},
        {"witnesses": len(report.witness_masks)},
        {"witness_iso_classes": report.witness_iso_classes},
    ]
    _emit(rows, args.json)
    if args.emit_witnesses:
        import os

        os.makedirs(args.emit_witnesses, exist_ok=True)
        for mask in report.witness_masks:
            path = os.path.join(args.emit_witnesses, f"witness_{mask}.edges")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(
                    serialize_edge_list(oracle.digraph_from_mask(report.n, mask))
                )
    return 0


def _cmd_verify(args) -> int:
    report = oracle.verify_extremal_characterization(args.n, jobs=args.jobs)
    rows = [
        {"n": report.n},
        {"max_ratio": str(report.max_ratio)},
        {"formula": str(report.formula_value)},
        {"witnesses": report.witness_count},
    ]
    for tag, size in sorted(report.class_sizes.items()):
        rows.append({"class": tag, "labeled_witnesses": size})
    if report.unmatched_witnesses:
        rows.append({"unmatched_witnesses": report.unmatched_witnesses})
    _emit(rows, args.json)
    if report.ok:
        print(json.dumps({"status": "OK"}) if args.json else "OK")
        return 0
    print(json.dumps({"status": "FAIL"}) if args.json else "FAIL")
    return 1


def _cmd_profile(args) -> int:
    g = _read_graph(args.graph)
    profile = perron.walk_profile(g, args.start, args.steps)
    for step, tv in enumerate(profile):
        if args.json:
            print(json.dumps({"step": step, "tv": f"{tv:.17g}"}))
        else:
            print(f"{step} {tv:.17g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkratio",
        description="Stationary distributions and principal ratios of directed random walks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_arg(p):
        p.add_argument("--graph", default="-", help="edge-list file, or - for stdin")

    def add_mode_args(p):
        p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
        p.add_argument("--float", action="store_true", help="lazy-walk power iteration")

    p = sub.add_parser("solve", help="print the stationary distribution and ratio")
    add_graph_arg(p)
    add_mode_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("ratio", help="print the principal ratio")
    add_graph_arg(p)
    add_mode_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("construct", help="emit a named construction as an edge list")
    p.add_argument("name", choices=sorted(_CONSTRUCTORS))
    p.add_argument("--n", type=int, help="vertex count / dense-part size")
    p.add_argument("--m", type=int, help="chain length for disc-ce and chain")
    p.add_argument("--k", type=int, help="complete-part size for disc-ce")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of edge list")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("transform", help="apply a ratio-increasing edge transform")
    p.add_argument("kind", choices=["add-edge", "delete-edge"])
    add_graph_arg(p)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("bound", help="bound evaluation and certificates")
    bound_sub = p.add_subparsers(dest="bound_command", required=True)
    pc = bound_sub.add_parser("check", help="degree + discrepancy certificate")
    add_graph_arg(pc)
    pc.add_argument("--a", required=True, help="degree center (rational, e.g. 1/2)")
    pc.add_argument("--b", required=True, help="discrepancy density")
    pc.add_argument("--c", required=True, help="source-set size fraction")
    pc.add_argument("--d", required=True, help="target-set size fraction")
    pc.add_argument("--eps", required=True, help="degree spread")
    pc.add_argument("--mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    pc.add_argument("--trials", type=int, default=10**5)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=_cmd_bound_check)
    pr = bound_sub.add_parser("report", help="distance/degree structure report")
    add_graph_arg(pr)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=_cmd_bound_report)

    p = sub.add_parser("enumerate", help="exhaustive max-ratio sweep at size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--emit-witnesses", metavar="DIR")
    p.add_argument("--force", action="store_true", help="override the size guard")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="re-derive a headline result by brute force")
    p.add_argument("target", choices=["extremal"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("profile", help="total-variation convergence table")
    add_graph_arg(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except WalkratioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
