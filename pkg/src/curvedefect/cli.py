"""Command-line interface: ``curvedefect <command> ...``.

Exit codes: 0 success, 1 validation failure (the violated invariant is
named on stderr), 2 usage error.  ``-`` means stdin or stdout.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stdout

from .casson import expected_c2_exhaustive, expected_c2_monte_carlo
from .curvemap import CurveError, dump_cmap, load_cmap, parse_cmap
from .defect import defect_polyak, defect_report, defect_winding
from .generators import connected_sum, cylindrical_grid, random_curve, rectangular_grid, torus_knot
from .moves import DECREASING_HOMOTOPY, KINDS, InvalidSite, enumerate_moves, predict_delta
from .planegraph import PlaneGraph, dual, dump_plane_graph, load_plane_graph, medial
from .reduction import bounds_report, min_moves_search, reduce_curve, reduce_graph


class UsageError(Exception):
    pass


def _read(path: str, stdin=None) -> str:
    if path == "-":
        return (stdin or sys.stdin).read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _load_any(text: str):
    """A CurveMap, or a PlaneGraph when vertex lines carry degrees."""
    rec = parse_cmap(text)
    if rec["tagged"]:
        return load_plane_graph(text)
    return load_cmap(text)


def _load_graph(text: str) -> PlaneGraph:
    return load_plane_graph(text)


# ----------------------------------------------------------------------
# commands


def cmd_gen(args, stdin) -> int:
    kind = args.family
    if kind == "torus":
        out = dump_cmap(torus_knot(args.p, args.q))
    elif kind == "cylgrid":
        out = dump_plane_graph(cylindrical_grid(args.p, args.q))
    elif kind == "grid":
        out = dump_plane_graph(rectangular_grid(args.p, args.q))
    elif kind == "random":
        out = dump_cmap(random_curve(args.n, args.seed))
    else:
        a = load_cmap(_read(args.a, stdin))
        b = load_cmap(_read(args.b, stdin))
        out = dump_cmap(connected_sum(a, b))
    _write(args.output, out)
    return 0


def cmd_defect(args, stdin) -> int:
    curve = load_cmap(_read(args.file, stdin), require_unicursal=True)
    if args.report:
        obj = defect_report(curve).to_json()
    else:
        obj = {"n": curve.n, "polyak": defect_polyak(curve), "winding": defect_winding(curve)}
    _write(args.output, _json(obj))
    return 0


def cmd_moves(args, stdin) -> int:
    curve = load_cmap(_read(args.file, stdin))
    kinds = set(args.kinds.split(",")) if args.kinds else set(DECREASING_HOMOTOPY)
    bad = kinds - set(KINDS)
    if bad:
        raise UsageError(f"unknown move kinds: {', '.join(sorted(bad))}")
    rows = []
    for site in enumerate_moves(curve, kinds):
        row = site.to_json()
        if site.kind in DECREASING_HOMOTOPY and curve.is_unicursal():
            row["predicted_delta"] = predict_delta(curve, site)
        rows.append(row)
    _write(args.output, _json(rows))
    return 0


def cmd_reduce(args, stdin) -> int:
    curve = load_cmap(_read(args.file, stdin))
    if args.exact:
        res = min_moves_search(curve, args.family, crossing_cap=args.crossing_cap)
        trace = res.trace
        summary = res.to_json()
    else:
        trace = reduce_curve(curve, args.family, args.strategy, max_steps=args.max_steps)
        summary = {"moves": trace.moves, "failed": trace.failed}
        if trace.failed:
            summary["reason"] = trace.reason
    summary["n"] = curve.n
    if trace is not None:
        summary["final_n"] = trace.final.n
        if args.trace:
            _write(args.trace, _json(trace.to_json()))
    _write(args.output, _json(summary))
    return 1 if summary.get("failed") else 0


def cmd_ereduce(args, stdin) -> int:
    g = _load_graph(_read(args.file, stdin))
    trace = reduce_graph(g, args.strategy, max_steps=args.max_steps)
    summary = {"vertices": g.vertex_count, "edges": g.edge_count, "moves": trace.moves, "failed": trace.failed}
    if trace.failed:
        summary["reason"] = trace.reason
    if args.trace:
        _write(args.trace, _json(trace.to_json()))
    _write(args.output, _json(summary))
    return 1 if trace.failed else 0


def cmd_bounds(args, stdin) -> int:
    text = _read(args.file, stdin)
    obj = _load_graph(text) if args.graph else _load_any(text)
    report = bounds_report(obj, max_steps=args.max_steps, exact_limit=args.exact_limit)
    _write(args.output, _json(report.to_json()))
    return 0


def cmd_medial(args, stdin) -> int:
    g = _load_graph(_read(args.file, stdin))
    _write(args.output, dump_cmap(medial(g)))
    return 0


def cmd_dual(args, stdin) -> int:
    g = _load_graph(_read(args.file, stdin))
    _write(args.output, dump_plane_graph(dual(g)))
    return 0


def cmd_casson(args, stdin) -> int:
    curve = load_cmap(_read(args.file, stdin), require_unicursal=True)
    if args.samples is not None:
        if args.samples < 1:
            raise UsageError("--samples must be at least 1")
        mean, se = expected_c2_monte_carlo(curve, args.samples, args.seed)
        obj = {"n": curve.n, "samples": args.samples, "seed": args.seed, "mean": mean, "stderr": se}
    else:
        num, den = expected_c2_exhaustive(curve)
        obj = {"n": curve.n, "defect": defect_polyak(curve), "expected_c2_num": num, "expected_c2_den": den}
    _write(args.output, _json(obj))
    return 0


def cmd_check(args, stdin) -> int:
    from .checks import SUITES, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = run_suite(args.suite)
    failed = [r for r in results if not r.ok]
    for r in results:
        if args.verbose or not r.ok:
            line = f"{'PASS' if r.ok else 'FAIL'} [{r.suite}] {r.name}"
            if r.detail:
                line += f": {r.detail}"
            print(line)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_render(args, stdin) -> int:
    from .render import render_svg

    obj = _load_any(_read(args.file, stdin))
    curve = medial(obj) if isinstance(obj, PlaneGraph) else obj
    _write(args.output, render_svg(curve, labels=not args.no_labels))
    return 0


def cmd_table(args, stdin) -> int:
    from .checks import grid_table, torus_table

    if args.which == "torus":
        rows = torus_table(args.pmax, args.amax)
    else:
        ks = tuple(int(k) for k in args.ks.split(","))
        rows = grid_table(ks)
    cols = list(rows[0]) if rows else []
    lines = ["\t".join(cols)]
    for row in rows:
        lines.append("\t".join(str(row[c]) for c in cols))
    _write(args.output, "\n".join(lines) + "\n")
    return 0 if all(r["ok"] for r in rows) else 1


# ----------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curvedefect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_output(p):
        p.add_argument("-o", "--output", default="-", help="output path (default stdout)")
        return p

    gen = sub.add_parser("gen", help="generate a curve or plane graph (CMAP)")
    gsub = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    for name, what in (("torus", "flat torus knot T(P,Q)"), ("cylgrid", "P x Q cylindrical grid"), ("grid", "P x Q grid")):
        g = with_output(gsub.add_parser(name, help=what))
        g.add_argument("p", type=int)
        g.add_argument("q", type=int)
    g = with_output(gsub.add_parser("random", help="random curve with N crossings"))
    g.add_argument("n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g = with_output(gsub.add_parser("sum", help="connected sum of two curves"))
    g.add_argument("a")
    g.add_argument("b")

    p = with_output(sub.add_parser("defect", help="defect of a curve as JSON"))
    p.add_argument("file")
    p.add_argument("--report", action="store_true", help="include pairs, bound and residuals")

    p = with_output(sub.add_parser("moves", help="list move sites"))
    p.add_argument("file")
    p.add_argument("--kinds", help="comma separated kinds, e.g. 1->0,2->0,3->3")

    p = with_output(sub.add_parser("reduce", help="reduce a curve to the circle"))
    p.add_argument("file")
    p.add_argument("--family", choices=["homotopy", "medial"], default="homotopy")
    p.add_argument("--strategy", choices=["greedy"], default="greedy")
    p.add_argument("--trace", help="write the move trace JSON here")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--exact", action="store_true", help="breadth-first minimum instead of greedy")
    p.add_argument("--crossing-cap", type=int)

    p = with_output(sub.add_parser("ereduce", help="electrically reduce a plane graph"))
    p.add_argument("file")
    p.add_argument("--strategy", choices=["greedy"], default="greedy")
    p.add_argument("--trace")
    p.add_argument("--max-steps", type=int)

    p = with_output(sub.add_parser("bounds", help="defect lower bound and achieved moves"))
    p.add_argument("file")
    p.add_argument("--graph", action="store_true", help="treat input as a plane graph")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--exact-limit", type=int, default=0, help="run exact search up to this many crossings")

    for name, what in (("medial", "medial map of a plane graph"), ("dual", "dual of a plane graph")):
        p = with_output(sub.add_parser(name, help=what))
        p.add_argument("file")

    p = with_output(sub.add_parser("casson", help="expected Casson invariant over random resolutions"))
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="enumerate all resolutions (default)")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check", help="run invariant checks over the built-in corpus")
    p.add_argument("--suite", default="all")
    p.add_argument("-v", "--verbose", action="store_true")

    p = with_output(sub.add_parser("render", help="SVG drawing"))
    p.add_argument("file")
    p.add_argument("--no-labels", action="store_true")

    p = with_output(sub.add_parser("table", help="verification tables (TSV)"))
    p.add_argument("which", choices=["torus", "grids"])
    p.add_argument("--pmax", type=int, default=10)
    p.add_argument("--amax", type=int, default=3)
    p.add_argument("--ks", default="2,3,4")
    return parser


COMMANDS = {
    "gen": cmd_gen,
    "defect": cmd_defect,
    "moves": cmd_moves,
    "reduce": cmd_reduce,
    "ereduce": cmd_ereduce,
    "bounds": cmd_bounds,
    "medial": cmd_medial,
    "dual": cmd_dual,
    "casson": cmd_casson,
    "check": cmd_check,
    "render": cmd_render,
    "table": cmd_table,
}


def run(argv: list[str] | None = None, stdin=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, stdin)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (CurveError, InvalidSite, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run_capture(argv: list[str], stdin: str | None = None) -> tuple[int, str]:
    """Run the CLI with captured stdout (for tests and self-checks)."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv, io.StringIO(stdin) if stdin is not None else None)
    return code, buf.getvalue()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

