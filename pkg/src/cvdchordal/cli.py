"""Command-line entry point.

Exit codes: 0 success, 1 verification/selftest failure, 2 input graph not
chordal (a hole certificate is printed), 3 infeasible input (parse errors,
caps exceeded, algorithm mismatch).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .bench import rows_to_csv, rows_to_text, run_bench
from .chordal import (NotChordalError, build_clique_tree, maximal_cliques,
                      recognize_chordal, try_clique_path)
from .chordal_dp import solve_chordal
from .generators import GenConfig, describe, generate
from .graph import bits
from .graphio import (GraphFormatError, ResultReport, check_report, parse_graph,
                      report_from_solution, serialize_graph)
from .interval_dp import solve_interval
from .oracle import BRUTE_CAP, brute_psi
from .selftest import run_selftest

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NOT_CHORDAL = 2
EXIT_BAD_INPUT = 3


def _read_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())


def _print_report(report: ResultReport, fmt: str) -> None:
    if fmt == "json":
        print(report.to_json())
        return
    print(f"algorithm: {report.algorithm}")
    print(f"psi: {report.psi} (scale {report.scale})")
    print(f"deletion weight: {report.deletion_weight}")
    print(f"deleted ({len(report.deleted)}): {report.deleted}")
    for i, cluster in enumerate(report.clusters):
        print(f"cluster {i}: {cluster}")
    for phase, ms in report.timings_ms.items():
        print(f"time {phase}: {ms:.1f} ms")


def cmd_solve(args) -> int:
    try:
        g, scale = _read_graph(args.file)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    timings: dict[str, float] = {}
    t0 = time.perf_counter()

    if args.algorithm == "brute":
        if g.n > BRUTE_CAP:
            print(f"error: n={g.n} exceeds brute-force cap {BRUTE_CAP}", file=sys.stderr)
            return EXIT_BAD_INPUT
        value, solution = brute_psi(g)
        algorithm = "brute"
        timings["solve"] = (time.perf_counter() - t0) * 1e3
    else:
        try:
            peo = recognize_chordal(g)
        except NotChordalError as exc:
            print(f"error: input graph is not chordal; hole = "
                  f"{[v + 1 for v in exc.hole]}", file=sys.stderr)
            return EXIT_NOT_CHORDAL
        cliques = maximal_cliques(g, peo)
        timings["recognize"] = (time.perf_counter() - t0) * 1e3
        t1 = time.perf_counter()
        path = None
        if args.algorithm in ("auto", "interval"):
            budget = 5_000 if args.algorithm == "auto" else 200_000
            path = try_clique_path(g, cliques, budget=budget)
        if args.algorithm == "interval" and path is None:
            print("error: graph admits no clique path (not interval); "
                  "use --algorithm chordal", file=sys.stderr)
            return EXIT_BAD_INPUT
        if path is not None:
            timings["structure"] = (time.perf_counter() - t1) * 1e3
            t2 = time.perf_counter()
            value, solution, _ = solve_interval(g, path)
            algorithm = "interval"
        else:
            tree = build_clique_tree(g, cliques)
            timings["structure"] = (time.perf_counter() - t1) * 1e3
            t2 = time.perf_counter()
            value, solution, _ = solve_chordal(g, tree)
            algorithm = "chordal"
        timings["solve"] = (time.perf_counter() - t2) * 1e3

    report = report_from_solution(g, solution.vertices, solution.clusters,
                                  algorithm, scale, {k: round(v, 3) for k, v in timings.items()})
    if args.check:
        ok, why = check_report(g, report)
        if not ok:
            print(f"error: self-check failed: {why}", file=sys.stderr)
            return EXIT_FAIL
        if g.n <= args.brute_cap and algorithm != "brute":
            bval, _ = brute_psi(g)
            if bval != value:
                print(f"error: brute-force cross-check mismatch "
                      f"(got {value}, want {bval})", file=sys.stderr)
                return EXIT_FAIL
    _print_report(report, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g, _ = _read_graph(args.graph)
        with open(args.solution) as fh:
            report = ResultReport.from_json(fh.read())
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    ok, why = check_report(g, report)
    if not ok:
        print(f"invalid: {why}")
        return EXIT_FAIL
    print("valid")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        lo, _, hi = args.weight_range.partition(":")
        cfg = GenConfig(n=args.n, seed=args.seed, tree_nodes=args.tree_nodes,
                        subtree_span=args.subtree_span,
                        weight_range=(int(lo), int(hi or lo)), family=args.family)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    g = generate(cfg)
    sys.stdout.write(serialize_graph(g, comments=(describe(cfg),)))
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        g, _ = _read_graph(args.file)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        peo = recognize_chordal(g)
    except NotChordalError as exc:
        print("chordal: no")
        print(f"hole: {[v + 1 for v in exc.hole]}")
        return EXIT_NOT_CHORDAL
    cliques = maximal_cliques(g, peo)
    print("chordal: yes")
    print(f"maximal cliques: {len(cliques)}")
    print(f"max clique size: {max((m.bit_count() for m in cliques), default=0)}")
    if args.interval:
        path = try_clique_path(g, cliques, budget=200_000)
        if path is None:
            print("interval: no (no clique path found)")
        else:
            print("interval: yes")
            print("clique path: " + " | ".join(
                ",".join(str(v + 1) for v in bits(m)) for m in path))
    return EXIT_OK


def cmd_selftest(args) -> int:
    summary = run_selftest(suite=args.suite, seeds=args.seeds, max_n=args.max_n,
                           out_dir=args.out_dir)
    print(json.dumps(summary, indent=2))
    return EXIT_OK if summary["ok"] else EXIT_FAIL


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = run_bench(args.family, sizes, reps=args.reps, seed=args.seed,
                     max_clique_cap=args.max_clique)
    sys.stdout.write(rows_to_csv(rows) if args.csv else rows_to_text(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvd", description="Exact cluster vertex deletion on chordal graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one graph file")
    p.add_argument("file")
    p.add_argument("--algorithm", choices=("auto", "chordal", "interval", "brute"),
                   default="auto")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--check", action="store_true",
                   help="validate the solution and cross-check small instances")
    p.add_argument("--brute-cap", type=int, default=BRUTE_CAP)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="validate a result report against its graph")
    p.add_argument("graph")
    p.add_argument("solution")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", help="generate a random instance on stdout")
    p.add_argument("--family", choices=("chordal", "interval", "clique", "path"),
                   default="chordal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tree-nodes", type=int, default=0)
    p.add_argument("--subtree-span", type=int, default=1)
    p.add_argument("--weight-range", default="0:10", metavar="LO:HI")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("check", help="report chordality (and optionally intervality)")
    p.add_argument("file")
    p.add_argument("--interval", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("selftest", help="run randomized property suites")
    p.add_argument("--suite", choices=("dp", "supermodular", "theorem2", "all"),
                   default="all")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--max-n", type=int, default=14)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=cmd_selftest)

    p = sub.add_parser("bench", help="timing table across instance sizes")
    p.add_argument("--family", choices=("chordal", "interval", "clique", "path"),
                   default="chordal")
    p.add_argument("--sizes", default="125,250,500,1000")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-clique", type=int, default=None)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
