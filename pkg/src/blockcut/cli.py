"""``blockcut`` command line.

Exit codes: 0 success, 1 eigensolver failure, 2 usage error, 3 I/O or
input-file error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import bench
from .graph import EdgeListError, format_edge_list, read_edge_list
from .inference import detect, sweep_csv
from .oracle import OracleSizeError, brute_force_max_profile, fraction_correct
from .sbm import SbmConfig, expected_mean_degree, generate
from .spectral import EigenOptions, EigenSolverError

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class CliIOError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as err:
        raise CliIOError(f"cannot write {path}: {err}") from err


def _load_graph(path: str):
    try:
        return read_edge_list(path)
    except OSError as err:
        raise CliIOError(f"cannot read {path}: {err}") from err
    except EdgeListError as err:
        raise CliIOError(f"{path}: {err}") from err


def _eigen_opts(args) -> EigenOptions:
    return EigenOptions(tol=args.tol, max_iter=args.max_iter, seed=args.eigen_seed)


def _add_eigen_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-8, help="eigenvector residual tolerance")
    p.add_argument("--max-iter", type=int, default=None, help="Lanczos iteration cap")
    p.add_argument("--eigen-seed", type=int, default=0, help="start-vector seed")


def cmd_generate(args, parser) -> int:
    try:
        cfg = SbmConfig(args.n1, args.n2, args.cin, args.cout, args.seed)
    except ValueError as err:
        parser.error(str(err))
    g, truth = generate(cfg)
    _write(args.out, format_edge_list(g))
    _write(args.truth, "".join(f"{x}\n" for x in truth.tolist()))
    print(f"n={g.n} m={g.m} mean_degree={2 * g.m / g.n:.6g} expected_mean_degree={expected_mean_degree(cfg):.6g}")
    return EXIT_OK


def cmd_detect(args, parser) -> int:
    g = _load_graph(args.graph)
    if g.n < 2:
        parser.error("graph needs at least two vertices")
    try:
        res = detect(g, args.variant, _eigen_opts(args))
    except EigenSolverError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    doc = res.to_dict(m=g.m)
    _write(args.out, json.dumps(doc, indent=1) + "\n")
    if args.sweep_csv:
        _write(args.sweep_csv, sweep_csv(res.sweep))
    print(f"variant={res.variant.value} n1={res.stats.n1} n2={res.stats.n2} m_out={res.stats.m_out} q={res.q:.9g}")
    return EXIT_OK


def cmd_sweep(args, parser) -> int:
    for c in args.cin_list:
        if c > args.csum or c < 0:
            parser.error(f"--cin-list value {c} outside [0, --csum={args.csum}]")
    curves = bench.profile_curves(args.n1, args.n2, args.cin_list, args.csum, args.seed,
                                  args.variant, _eigen_opts(args))
    _write(args.out, bench.curves_csv(curves))
    for c_in, q in curves.items():
        print(f"c_in={c_in:g} argmax_size={int(np.argmax(q))}")
    return EXIT_OK


def cmd_accuracy(args, parser) -> int:
    if args.n % 2:
        parser.error("--n must be even (equal groups)")
    grid = bench.c_in_grid(args.cin_from, args.cin_to, args.cin_step)
    if not grid:
        parser.error("empty c_in range")
    for c in grid:
        if c > args.csum:
            parser.error(f"c_in value {c} exceeds --csum={args.csum}")
    rows = bench.accuracy_experiment(args.n, grid, args.csum, args.reps, args.seed,
                                     args.variant, _eigen_opts(args))
    _write(args.out, bench.accuracy_csv(rows, timing=args.timing))
    summary_path = args.summary or str(Path(args.out).with_suffix("")) + "_summary.csv"
    _write(summary_path, bench.summary_csv(rows, args.csum))
    crit = bench.ThresholdSpec(args.csum).c_in_critical
    print(f"detectability threshold c_in = {crit:.6g}")
    for c_in, mean in bench.summarize(rows).items():
        print(f"c_in={c_in:g} mean_fraction_correct={mean:.4f}")
    return EXIT_OK


def cmd_oracle_check(args, parser) -> int:
    g = _load_graph(args.graph)
    try:
        oracle = brute_force_max_profile(g, args.variant)
    except OracleSizeError as err:
        parser.error(str(err))
    try:
        res = detect(g, args.variant, _eigen_opts(args))
    except EigenSolverError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    sw = res.sweep
    print(f"pipeline_q={res.q:.9g}")
    print(f"oracle_q={oracle.best_value:.9g}")
    print(f"pipeline_q_is_sweep_max={bool(sw.best_q == sw.q_values.max())}")
    print(f"fraction_correct_vs_oracle={fraction_correct(res.labels, oracle.best_partition):.6g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blockcut", description="Spectral maximum-likelihood two-group community detection.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="draw a planted-partition graph")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--cin", type=float, required=True)
    p.add_argument("--cout", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="edge-list output path")
    p.add_argument("--truth", required=True, help="ground-truth labels output path")
    p.set_defaults(func=cmd_generate)

    variants = ["standard", "dc"]

    p = sub.add_parser("detect", help="detect two communities in an edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--variant", choices=variants, default="dc")
    p.add_argument("--seed", dest="eigen_seed", type=int, default=0)
    p.add_argument("--out", required=True, help="JSON result path")
    p.add_argument("--sweep-csv", default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=None)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sweep", help="profile-likelihood curves for planted partitions")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--cin-list", type=_float_list, required=True)
    p.add_argument("--csum", type=float, default=100.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=variants, default="dc")
    p.add_argument("--out", required=True)
    _add_eigen_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("accuracy", help="fraction correct vs c_in, equal groups")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cin-from", type=float, required=True)
    p.add_argument("--cin-to", type=float, required=True)
    p.add_argument("--cin-step", type=float, default=2.0)
    p.add_argument("--csum", type=float, default=100.0)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=variants, default="dc")
    p.add_argument("--out", required=True)
    p.add_argument("--summary", default=None, help="per-c_in means (default: <out>_summary.csv)")
    p.add_argument("--timing", action="store_true", help="add a wall_time column (breaks byte-identical reruns)")
    _add_eigen_flags(p)
    p.set_defaults(func=cmd_accuracy)

    p = sub.add_parser("oracle-check", help="compare the pipeline with exhaustive search (n <= 24)")
    p.add_argument("--graph", required=True)
    p.add_argument("--variant", choices=variants, default="standard")
    _add_eigen_flags(p)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args, parser)
    except CliIOError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
