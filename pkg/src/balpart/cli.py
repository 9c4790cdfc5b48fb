"""Command line interface.

    balpart stats GRAPH
    balpart partition GRAPH --algo reldg --order ambivalence --k 16 --iters 10
    balpart sweep-c GRAPH --algos blp,klshp,reldg --c-values neg-inf,-1,0,1,2
    balpart sweep-k GRAPH --k-values 20,40,60,80,100
    balpart export-order GRAPH --order degree --out degree.txt
    balpart correlate-orders GRAPH            (or --order-file A --order-file B ...)
    balpart check-bounds --k-values 2,4,16 --d-values 1,4,8,32

Results go to stdout as JSON unless ``--out`` is given. Failures exit
non-zero with ``{"error": ..., "message": ...}`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .bounds import check_ambivalence_bounds
from .experiments import correlate_orders, correlation_matrix, run_partition, sweep_incumbency, sweep_k
from .graph import graph_stats, load_edge_list
from .kendall import relabel
from .orders import KINDS, order_for, read_order, write_order
from .report import _jsonable, dump_assignment, emit_report


def threshold(text: str) -> float:
    t = text.strip().lower()
    if t in ("neg-inf", "-inf", "-infinity"):
        return -math.inf
    if t in ("inf", "+inf", "infinity", "pos-inf"):
        return math.inf
    return float(t)


def _csv_list(conv):
    return lambda text: [conv(x) for x in text.split(",") if x.strip()]


def _emit_json(obj, out):
    text = json.dumps(_jsonable(obj), indent=2)
    if out:
        Path(out).write_text(text)
    else:
        print(text)


def _common(sp):
    sp.add_argument("graph", help="SNAP edge list (optionally .gz)")
    sp.add_argument("--k", type=int, default=16)
    sp.add_argument("--epsilon", type=float, default=0.0)
    sp.add_argument("--iters", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--ties", choices=("random", "deterministic"), default="random")
    sp.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="balpart", description="Balanced k-way graph partitioning")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("stats", help="graph statistics as JSON")
    sp.add_argument("graph")

    sp = sub.add_parser("partition", help="run one partitioner")
    _common(sp)
    sp.add_argument("--algo", choices=("blp", "shp1", "shp2", "klshp", "reldg"), default="reldg")
    sp.add_argument("--order", choices=KINDS, default="random")
    sp.add_argument("--incumbency", type=threshold, default=None,
                    help="threshold c (number or neg-inf); default per algorithm")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--dump-assignment")

    sp = sub.add_parser("sweep-c", help="final fraction across incumbency thresholds")
    _common(sp)
    sp.add_argument("--algos", type=_csv_list(str), default=["blp", "klshp", "reldg"])
    sp.add_argument("--c-values", type=_csv_list(threshold),
                    default=[-math.inf, -2.0, -1.0, 0.0, 1.0, 2.0])
    sp.add_argument("--order", choices=KINDS, default="random")

    sp = sub.add_parser("sweep-k", help="reLDG final fraction across shard counts")
    _common(sp)
    sp.add_argument("--k-values", type=_csv_list(int), default=[20, 40, 60, 80, 100])
    sp.add_argument("--order", choices=KINDS, default="ambivalence")

    sp = sub.add_parser("export-order", help="write a stream order, one original id per line")
    sp.add_argument("graph")
    sp.add_argument("--order", choices=KINDS, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("correlate-orders", help="weighted Kendall tau between stream orders")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--order-file", action="append", default=[])
    sp.add_argument("--k", type=int, default=16)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ties", choices=("random", "deterministic"), default="random")
    sp.add_argument("--out")

    sp = sub.add_parser("check-bounds", help="Monte-Carlo check of ambivalence degree bounds")
    sp.add_argument("--k-values", type=_csv_list(int), default=[2, 4, 16])
    sp.add_argument("--d-values", type=_csv_list(int), default=[1, 4, 8, 32])
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    return parser


def run(args) -> int:
    if args.command == "stats":
        _emit_json(graph_stats(load_edge_list(args.graph)).as_dict(), None)
        return 0

    if args.command == "partition":
        g = load_edge_list(args.graph)
        report = run_partition(g, args.algo, args.k, args.epsilon, args.order, args.incumbency,
                               args.iters, args.seed, args.trials, args.ties,
                               keep_assignment=bool(args.dump_assignment))
        report.config["graph"] = str(args.graph)
        if args.dump_assignment:
            dump_assignment(g, report.trials[0].assignment, args.dump_assignment)
            report.assignment_path = str(args.dump_assignment)
        if args.out:
            emit_report(report, args.out, args.format)
        else:
            _emit_json(report.to_dict(), None)
        return 0

    if args.command == "sweep-c":
        g = load_edge_list(args.graph)
        rows = sweep_incumbency(g, args.algos, args.c_values, args.k, args.epsilon, args.iters,
                                args.seed, args.trials, args.order, args.ties)
        _emit_json({"graph": args.graph, "rows": rows}, args.out)
        return 0

    if args.command == "sweep-k":
        g = load_edge_list(args.graph)
        rows = sweep_k(g, args.k_values, args.order, args.epsilon, args.iters, args.seed,
                       args.trials, args.ties)
        _emit_json({"graph": args.graph, "rows": rows}, args.out)
        return 0

    if args.command == "export-order":
        g = load_edge_list(args.graph)
        write_order(g, order_for(g, args.order, seed=args.seed), args.out)
        return 0

    if args.command == "correlate-orders":
        if args.order_file:
            orders = relabel([read_order(p) for p in args.order_file])
            labels = [p if args.order_file.count(p) == 1 else f"{p}#{i}"
                      for i, p in enumerate(args.order_file)]
            matrix = correlation_matrix(dict(zip(labels, orders)))
        elif args.graph:
            matrix = correlate_orders(load_edge_list(args.graph), args.seed, args.k, ties=args.ties)
        else:
            raise ValueError("give a graph or at least one --order-file")
        _emit_json(matrix.as_dict(), args.out)
        return 0

    if args.command == "check-bounds":
        rows = [check_ambivalence_bounds(k, d, args.samples, args.seed).as_dict()
                for k in args.k_values for d in args.d_values]
        _emit_json({"rows": rows, "all_pass": all(r["pass"] for r in rows)}, args.out)
        return 0 if all(r["pass"] for r in rows) else 1
    return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except Exception as exc:  # reported as a machine-readable error object
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
