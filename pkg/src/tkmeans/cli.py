"""Command line interface for the benchmark harness.

Subcommands::

    tkmeans run    --algo NAME --data PATH | --gen blobs:... --k K [--seed S ...]
    tkmeans bench  --config FILE [--format csv|md|json] [--out PATH]
    tkmeans robust --data ... --fractions 0,0.05,0.1 --algos kmeans,tkmeans ...

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical
failure in at least one cell.  No environment variables are consulted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, FormatError, NumericalError, UsageError
from .harness import ALGORITHMS, RunSpec, load_config, run_bench, run_once, run_robustness

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through UsageError instead
    def error(self, message):
        raise UsageError(message)


def _add_data_arguments(sub, with_labels=True):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--data", help="dataset path (.csv or whitespace-delimited text)")
    group.add_argument("--gen", help="generator spec, e.g. blobs:k=15,n=300,p=2,std=0.6,seed=7")
    if with_labels:
        sub.add_argument("--labels", help="separate partition file for text datasets")
        sub.add_argument("--label-column", default="last", help="CSV label column index or 'last'")
    sub.add_argument("--standardize", action="store_true", help="standardize columns before fitting")


def _add_fit_arguments(sub):
    sub.add_argument("--max-iter", type=int, default=300)
    sub.add_argument("--tol", type=float, default=1e-6)
    sub.add_argument("--nu", type=float, default=None, help="fix the degrees of freedom")
    sub.add_argument("--init", choices=["random", "kmeanspp"], default=None)
    sub.add_argument("--ridge", type=float, default=None, help="covariance ridge for gmm/tmm")
    sub.add_argument("--fast-alpha", type=float, default=1e-8, help="d^2 guard of the fast variant")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tkmeans", description="Clustering benchmark harness")
    subs = parser.add_subparsers(dest="command", required=True)

    run_p = subs.add_parser("run", help="single seeded run, JSON to stdout")
    run_p.add_argument("--algo", required=True, help=f"one of: {', '.join(ALGORITHMS)}")
    _add_data_arguments(run_p)
    run_p.add_argument("--k", type=int, required=True)
    run_p.add_argument("--seed", type=int, default=0)
    _add_fit_arguments(run_p)

    bench_p = subs.add_parser("bench", help="run every spec of a config file")
    bench_p.add_argument("--config", required=True, help="INI file of run specs")
    bench_p.add_argument("--format", choices=["csv", "md", "json"], default="md")
    bench_p.add_argument("--out", help="output path (stdout when omitted)")

    robust_p = subs.add_parser("robust", help="contamination sweep")
    robust_p.add_argument("--algos", required=True, help="comma-separated algorithm names")
    _add_data_arguments(robust_p)
    robust_p.add_argument("--fractions", required=True, help="comma-separated outlier fractions")
    robust_p.add_argument("--repeats", type=int, default=20)
    robust_p.add_argument("--base-seed", type=int, default=0)
    robust_p.add_argument("--k", type=int, default=None, help="clusters (default: ground-truth classes)")
    robust_p.add_argument("--box-expansion", type=float, default=2.0)
    robust_p.add_argument("--format", choices=["csv", "md", "json"], default="md")
    robust_p.add_argument("--out", help="output path (stdout when omitted)")
    return parser


def _spec_from_args(args, algorithm: str, repeats: int = 1, base_seed: int = 0) -> RunSpec:
    return RunSpec(
        algorithm=algorithm,
        data=args.data if args.data is not None else args.gen,
        k=args.k,
        repeats=repeats,
        base_seed=base_seed,
        label_path=getattr(args, "labels", None),
        label_column=getattr(args, "label_column", "last"),
        standardize=args.standardize,
        max_iter=getattr(args, "max_iter", 300),
        tol=getattr(args, "tol", 1e-6),
        nu=getattr(args, "nu", None),
        init=getattr(args, "init", None),
        ridge=getattr(args, "ridge", None),
        fast_alpha=getattr(args, "fast_alpha", 1e-8),
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args) -> int:
    spec = _spec_from_args(args, args.algo)
    result, report = run_once(spec, args.seed)
    payload = {
        "algorithm": spec.algorithm,
        "data": spec.data,
        "k": spec.k,
        "seed": args.seed,
        "metrics": {"ari": report.ari, "mse": report.mse, "wb": report.wb},
        "iterations": result.iterations,
        "wall_time_sec": result.wall_time,
        "loss_trace": [float(v) for v in result.loss_trace],
        "centers": [[float(v) for v in row] for row in result.centers],
        "labels": [int(v) for v in result.labels],
    }
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _cmd_bench(args) -> int:
    report = run_bench(load_config(args.config))
    _emit(report.render(args.format), args.out)
    return EXIT_NUMERICAL if report.failed else EXIT_OK


def _cmd_robust(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    try:
        fractions = [float(f) for f in args.fractions.split(",") if f.strip()]
    except ValueError:
        raise UsageError(f"bad --fractions value {args.fractions!r}") from None
    if not algos or not fractions:
        raise UsageError("--algos and --fractions must be non-empty")
    report = run_robustness(
        args.data if args.data is not None else args.gen,
        fractions,
        algos,
        repeats=args.repeats,
        base_seed=args.base_seed,
        k=args.k,
        box_expansion=args.box_expansion,
        label_path=args.labels,
        label_column=args.label_column,
        standardize=args.standardize,
    )
    _emit(report.render(args.format), args.out)
    return EXIT_NUMERICAL if report.failed else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_robust(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, DomainError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
