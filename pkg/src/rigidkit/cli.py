"""Command-line interface.

Subcommands: check-sparsity, analyze, colour, generate, reduce, construct,
suite, export.  JSON output is canonical, so identical commands with the
same seed produce byte-identical bytes.  Exit codes: 0 success (tight for
check-sparsity), 1 suite failure, 2 malformed input or validation error,
3 sparse-not-tight, 4 not-sparse.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import io
from .analysis import analyze_framework
from .construct import PlacementParams, construct_coloured_placement
from .errors import RigidkitError, NotWellPositionedError
from .frameworks import nontrivial_flex
from .graph import SparsityParams, is_sparse_bruteforce, is_sparse_pebble
from .norms import (
    LqNorm,
    PolytopeNorm,
    Q_ILL_CONDITIONED_HIGH,
    Q_ILL_CONDITIONED_LOW,
)
from .reduce import reduce_to_k1
from .suites import SUITE_GROUPS, run_suite_group
from .polytope import colour_framework, spanning_tree_criteria

DEFAULT_SEED = 0


def _env_seed() -> int:
    raw = os.environ.get("RIGIDKIT_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _warn(message: str, quiet: bool):
    if not quiet:
        print(f"warning: {message}", file=sys.stderr)


def cmd_check_sparsity(args) -> int:
    g = io.graph_from_json(io.load_document(args.graph))
    params = SparsityParams(args.k, args.l)
    verdict = is_sparse_pebble(g, params)
    lines = []
    if verdict.is_tight:
        lines.append(f"tight ({params.k},{params.l})")
        code = 0
    elif verdict.is_sparse:
        lines.append(f"sparse, not tight ({len(g.edges)} edges, {params.k}*{g.n}-{params.l} required)")
        code = 3
    else:
        lines.append(f"not sparse; violating subset {list(verdict.witness)}")
        code = 4
    if args.oracle:
        oracle = is_sparse_bruteforce(g, params)
        agree = (oracle.is_sparse, oracle.is_tight) == (verdict.is_sparse, verdict.is_tight)
        lines.append(f"oracle: sparse={oracle.is_sparse} tight={oracle.is_tight} agreement={agree}")
        if not agree:  # pragma: no cover - the suites pin equivalence
            code = 1
    print("\n".join(lines))
    return code


def cmd_analyze(args) -> int:
    f = io.framework_from_json(io.load_document(args.framework))
    if isinstance(f.norm, LqNorm) and not (
        Q_ILL_CONDITIONED_LOW <= f.norm.q <= Q_ILL_CONDITIONED_HIGH
    ):
        _warn(
            f"q={f.norm.q} makes the q-1 powers ill-conditioned; consider the polytopic model",
            args.quiet,
        )
    report = analyze_framework(f, tol=args.tol)
    doc = io.report_to_json(report)
    colouring = None
    if isinstance(f.norm, PolytopeNorm):
        colouring = colour_framework(f)
        doc["colouring"] = io.colouring_to_json(colouring)
        doc["tree_criteria"] = io.criteria_to_json(spanning_tree_criteria(f))
    flex = nontrivial_flex(report, f.n, f.d)
    doc["nontrivial_flex"] = None if flex is None else flex.tolist()
    if args.format == "json":
        _write(io.dumps(doc), args.output)
    elif args.format == "text":
        verdict = "minimally rigid" if report.is_minimal else (
            "rigid" if report.is_rigid else "flexible"
        )
        print(f"rank {report.rank}/{report.matrix_cols - report.trivial_dim} ({verdict}); "
              f"nullity {report.nullity}, trivial dim {report.trivial_dim}")
    elif args.format == "dot":
        _write(io.framework_to_dot(f, colouring), args.output)
    elif args.format == "svg":
        from .render import draw_framework

        out = args.output or "framework.svg"
        draw_framework(f, out, colouring=colouring, flex=flex)
        if not args.quiet:
            print(f"wrote {out}")
    return 0


def cmd_colour(args) -> int:
    f = io.framework_from_json(io.load_document(args.framework))
    if not isinstance(f.norm, PolytopeNorm):
        raise RigidkitError("framework colourings exist for polytopic norms only")
    col = colour_framework(f)
    _write(io.dumps(io.colouring_to_json(col)), args.output)
    return 0


def cmd_generate(args) -> int:
    from .frameworks import Framework
    from .lq import sample_regular_placement
    from .moves import generate_tight_graph

    g, seq = generate_tight_graph(args.n, args.scheme, seed=args.seed)
    _write(io.dumps(io.graph_to_json(g)), args.output)
    if args.moves_out:
        _write(io.dumps(io.sequence_to_json(seq)), args.moves_out)
    if args.framework_out:
        norm = LqNorm(args.q)
        points, rank = sample_regular_placement(g, norm, seed=args.seed, trials=args.trials)
        _write(io.dumps(io.framework_to_json(Framework(g, points, norm))), args.framework_out)
        if not args.quiet:
            print(f"sampled placement rank {rank} (best of {args.trials})", file=sys.stderr)
    if not args.quiet:
        print(f"generated n={g.n}, |E|={len(g.edges)} via {len(seq.moves)} moves", file=sys.stderr)
    return 0


def cmd_reduce(args) -> int:
    g = io.graph_from_json(io.load_document(args.graph))
    seq = reduce_to_k1(g)
    _write(io.dumps(io.sequence_to_json(seq)), args.output)
    if not args.quiet:
        print(f"reduced in {len(seq.moves)} moves", file=sys.stderr)
    return 0


def cmd_construct(args) -> int:
    seq = io.sequence_from_json(io.load_document(args.sequence))
    norm = io.norm_from_json({"type": args.norm} if args.facets is None
                             else {"type": "polytope", "facets": args.facets})
    if not isinstance(norm, PolytopeNorm):
        raise RigidkitError("the placement constructor needs a polytopic norm")
    params = PlacementParams(epsilon=args.epsilon, r=args.r, delta=args.delta)
    f = construct_coloured_placement(seq, norm, params, seed=args.seed)
    _write(io.dumps(io.framework_to_json(f)), args.output)
    return 0


def cmd_suite(args) -> int:
    reports = run_suite_group(args.name, seed=args.seed)
    failed = False
    for report in reports:
        for line in report.summary_lines():
            print(line)
        failed = failed or not report.passed
        if args.report_dir:
            os.makedirs(args.report_dir, exist_ok=True)
            if report.rows:
                csv_path = os.path.join(args.report_dir, f"{report.name}.csv")
                with open(csv_path, "w", newline="", encoding="utf-8") as fh:
                    fields = sorted({key for row in report.rows for key in row})
                    writer = csv.DictWriter(fh, fieldnames=fields)
                    writer.writeheader()
                    writer.writerows(report.rows)
            from .render import draw_suite_summary

            draw_suite_summary(report.name, report.checks,
                               os.path.join(args.report_dir, f"{report.name}.svg"))
    total = sum(len(r.checks) for r in reports)
    good = sum(1 for r in reports for c in r.checks if c.passed)
    print(f"suite {args.name}: {good}/{total} checks passed")
    return 1 if failed else 0


def cmd_export(args) -> int:
    doc = io.load_document(args.input)
    kind = io.document_kind(doc)
    if kind == "sequence":
        # replay tool: a move-sequence document exports as its result graph
        g = io.sequence_from_json(doc).replay()
        if args.format == "json":
            _write(io.dumps(io.graph_to_json(g)), args.output)
        elif args.format == "dot":
            _write(io.graph_to_dot(g), args.output)
        else:
            raise RigidkitError("replayed sequences export to dot/json only")
        return 0
    if args.format == "json":
        _write(io.dumps(doc), args.output)
        return 0
    if kind == "graph":
        g = io.graph_from_json(doc)
        if args.format == "dot":
            _write(io.graph_to_dot(g), args.output)
            return 0
        raise RigidkitError("graphs without placements export to dot/json only")
    if kind == "framework":
        f = io.framework_from_json(doc)
        colouring = None
        if isinstance(f.norm, PolytopeNorm):
            try:
                colouring = colour_framework(f)
            except NotWellPositionedError:
                colouring = None
        if args.format == "dot":
            _write(io.framework_to_dot(f, colouring), args.output)
            return 0
        if args.format == "svg":
            from .render import draw_framework

            out = args.output or "framework.svg"
            draw_framework(f, out, colouring=colouring)
            if not args.quiet:
                print(f"wrote {out}")
            return 0
    raise RigidkitError(f"cannot export a {kind} to {args.format}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidkit",
        description="Infinitesimal rigidity of planar bar-joint frameworks "
                    "under lq and polytopic norms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=_env_seed(),
                       help="random seed (default: RIGIDKIT_SEED or 0)")
        p.add_argument("--quiet", action="store_true", help="suppress warnings and progress")
        p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")

    p = sub.add_parser("check-sparsity", help="pebble-game sparsity verdict for a graph")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive oracle")
    add_common(p)
    p.set_defaults(func=cmd_check_sparsity)

    p = sub.add_parser("analyze", help="rigidity report for a framework")
    p.add_argument("framework", help="framework JSON file")
    p.add_argument("--format", choices=("json", "text", "dot", "svg"), default="json")
    p.add_argument("--tol", type=float, default=None, help="absolute rank tolerance override")
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("colour", help="framework colouring under a polytopic norm")
    p.add_argument("framework")
    add_common(p)
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("generate", help="random tight graph via scheme moves")
    p.add_argument("--n", type=int, required=True, help="target vertex count")
    p.add_argument("--scheme", choices=("A", "B"), default="A")
    p.add_argument("--moves-out", default=None, help="also write the move sequence JSON")
    p.add_argument("--framework-out", default=None,
                   help="also write a framework JSON with a best-of-trials sampled placement")
    p.add_argument("--q", type=float, default=3.0, help="lq exponent for --framework-out")
    p.add_argument("--trials", type=int, default=20, help="placement samples for --framework-out")
    add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="inverse-move certificate down to a single vertex")
    p.add_argument("graph")
    add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("construct", help="colour-preserving placement for a move sequence")
    p.add_argument("sequence", help="move sequence JSON file")
    p.add_argument("--norm", choices=("linf", "l1"), default="linf")
    p.add_argument("--facets", type=json.loads, default=None,
                   help="explicit facet vectors as JSON, e.g. [[1,0],[0,1]]")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--r", type=float, default=0.25)
    p.add_argument("--delta", type=float, default=0.05)
    add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("suite", help="run a property suite")
    p.add_argument("name", choices=sorted(SUITE_GROUPS))
    p.add_argument("--report-dir", default=None,
                   help="write per-case CSV and summary SVG figures here")
    add_common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("export", help="convert a JSON document to json/dot/svg")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot", "svg"), default="dot")
    add_common(p)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RigidkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
