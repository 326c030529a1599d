"""Benchmark harness: run algorithms over datasets with seeded repeats.

A run spec names one algorithm, one dataset (a path, a ``blobs:...``
generator string, or an in-memory :class:`~tkmeans.datasets.Dataset`),
the cluster count, and the repeat protocol.  Repeat ``r`` always uses
seed ``base_seed + r``, so any single cell can be reproduced in
isolation.  Reports aggregate mean and sample (N-1) standard deviation
per metric and can be rendered as CSV, Markdown, or JSON (the JSON form
keeps full per-run detail including loss traces).
"""

from __future__ import annotations

import configparser
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .baselines import BaselineConfig, kmeans_fit, kmedians_fit, kmedoids_fit
from .core import FitConfig, fit, fit_fast
from .datasets import (
    ContaminationSpec,
    Dataset,
    contaminate,
    generate_gaussian_blobs,
    load_benchmark_text,
    load_csv_labeled,
    standardize,
)
from .errors import FormatError, UsageError
from .metrics import MetricReport, adjusted_rand_index, clustering_mse, wb_ratio
from .mixtures import gmm_fit, tmm_fit
from .results import ClusteringResult

__all__ = [
    "ALGORITHMS",
    "RunSpec",
    "BenchRow",
    "BenchReport",
    "run_once",
    "run_bench",
    "run_robustness",
    "load_config",
]

ALGORITHMS = (
    "kmeans",
    "kmeans++",
    "kmedoids",
    "kmedians",
    "gmm",
    "tmm",
    "tkmeans",
    "fast-tkmeans",
    "fast-tkmeans++",
)


@dataclass(frozen=True)
class RunSpec:
    """One benchmark cell: an algorithm on a dataset with a repeat protocol."""

    algorithm: str
    data: object
    k: int
    repeats: int = 1
    base_seed: int = 0
    name: str | None = None
    label_path: str | None = None
    label_column: object = "last"
    standardize: bool = False
    max_iter: int = 300
    tol: float = 1e-6
    nu: float | None = None
    init: str | None = None
    ridge: float | None = None
    fast_alpha: float = 1e-8

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise UsageError(
                f"unknown algorithm {self.algorithm!r}; expected one of {', '.join(ALGORITHMS)}"
            )
        if self.repeats < 1:
            raise UsageError(f"repeats must be >= 1, got {self.repeats}")


def parse_generator_spec(text: str) -> Dataset:
    """Build a dataset from a ``blobs:key=value,...`` string.

    Keys: ``k`` clusters, ``n`` points per cluster, ``p`` dimensions,
    ``std`` cluster spread, ``box`` center box half-width, ``seed``.
    """
    kind, _, body = text.partition(":")
    if kind != "blobs":
        raise UsageError(f"unknown generator {kind!r}; only 'blobs:...' is supported")
    params = {"k": 3, "n": 100, "p": 2, "std": 1.0, "box": 10.0, "seed": 0}
    if body:
        for item in body.split(","):
            key, sep, value = item.partition("=")
            key = key.strip().lower()
            if not sep or key not in params:
                raise UsageError(f"bad generator parameter {item!r}")
            try:
                params[key] = float(value) if key in ("std", "box") else int(value)
            except ValueError:
                raise UsageError(f"bad generator value {item!r}") from None
    return generate_gaussian_blobs(
        n_clusters=params["k"],
        per_cluster=params["n"],
        n_features=params["p"],
        center_box=params["box"],
        cluster_std=params["std"],
        seed=params["seed"],
        name=text,
    )


def resolve_dataset(spec: RunSpec) -> Dataset:
    """Materialize the spec's dataset, applying standardization if asked."""
    data = spec.data
    if isinstance(data, str):
        if data.startswith("blobs:"):
            data = parse_generator_spec(data)
        elif Path(data).suffix.lower() == ".csv":
            data = load_csv_labeled(data, label_column=spec.label_column)
        else:
            data = load_benchmark_text(data, label_path=spec.label_path)
    if not isinstance(data, Dataset):
        raise UsageError(f"cannot interpret data source {spec.data!r}")
    if spec.standardize:
        data = standardize(data)[0]
    return data


def _dispatch(spec: RunSpec, data: Dataset, seed: int) -> ClusteringResult:
    a = spec.algorithm
    if a in ("kmeans", "kmeans++", "kmedoids", "kmedians"):
        default_init = "kmeanspp" if a == "kmeans++" else "random"
        cfg = BaselineConfig(spec.max_iter, spec.tol, seed, spec.init or default_init)
        fn = {"kmeans": kmeans_fit, "kmeans++": kmeans_fit, "kmedoids": kmedoids_fit, "kmedians": kmedians_fit}[a]
        return fn(data, spec.k, cfg)
    if a in ("gmm", "tmm"):
        cfg = BaselineConfig(spec.max_iter, spec.tol, seed, spec.init or "kmeanspp")
        if a == "gmm":
            return gmm_fit(data, spec.k, cfg, ridge=spec.ridge)[0]
        return tmm_fit(data, spec.k, cfg, ridge=spec.ridge, fixed_nu=spec.nu)[0]
    if a == "tkmeans":
        cfg = FitConfig(spec.max_iter, spec.tol, seed, spec.init or "random", fixed_nu=spec.nu)
        return fit(data, spec.k, cfg)
    # fast variants: nu defaults to 1 inside fit_fast
    default_init = "kmeanspp" if a == "fast-tkmeans++" else "random"
    cfg = FitConfig(
        spec.max_iter, spec.tol, seed, spec.init or default_init,
        fixed_nu=spec.nu, fast_alpha=spec.fast_alpha,
    )
    return fit_fast(data, spec.k, cfg)


def run_once(spec: RunSpec, seed: int, data: Dataset | None = None):
    """Run one seeded fit and score it; returns (ClusteringResult, MetricReport).

    ARI is computed when the dataset carries ground truth; MSE and W/B
    always.  Wall time covers the fit call only.
    """
    if data is None:
        data = resolve_dataset(spec)
    result = _dispatch(spec, data, seed)
    ari = None
    if data.labels is not None:
        ari = adjusted_rand_index(data.labels, result.labels)
    mse = clustering_mse(data, result.centers, result.labels)
    wb = wb_ratio(data, result.centers, result.labels)
    return result, MetricReport(ari, mse, wb)


def _mean_std(values) -> tuple[float, float]:
    vals = np.asarray(values, dtype=np.float64)
    if vals.size == 1:
        return float(vals[0]), 0.0
    return float(vals.mean()), float(vals.std(ddof=1))


@dataclass(frozen=True)
class BenchRow:
    """Aggregated scores of one (algorithm, dataset) cell."""

    name: str
    algorithm: str
    dataset: str
    k: int
    repeats: int
    fraction: float | None = None
    ari_mean: float | None = None
    ari_std: float | None = None
    mse_mean: float | None = None
    mse_std: float | None = None
    wb_mean: float | None = None
    wb_std: float | None = None
    iters_mean: float | None = None
    iters_std: float | None = None
    time_mean: float | None = None
    time_std: float | None = None
    error: str | None = None
    runs: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class BenchReport:
    """A list of aggregated rows plus renderers for the output formats."""

    rows: tuple

    @property
    def failed(self) -> bool:
        return any(row.error is not None for row in self.rows)

    def to_csv(self) -> str:
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            [
                "name", "algorithm", "dataset", "k", "fraction", "repeats",
                "ari_mean", "ari_std(n-1)", "mse_mean", "mse_std(n-1)",
                "wb_mean", "wb_std(n-1)", "iters_mean", "iters_std(n-1)",
                "time_mean_sec", "time_std(n-1)", "error",
            ]
        )
        for r in self.rows:
            cells = [
                r.name, r.algorithm, r.dataset, r.k,
                "" if r.fraction is None else f"{r.fraction:g}",
                r.repeats,
            ]
            for v in (r.ari_mean, r.ari_std, r.mse_mean, r.mse_std, r.wb_mean, r.wb_std,
                      r.iters_mean, r.iters_std, r.time_mean, r.time_std):
                cells.append("" if v is None else f"{v:.6g}")
            cells.append(r.error or "")
            writer.writerow(cells)
        return buf.getvalue()

    def to_markdown(self) -> str:
        """Tables grouped like the published benchmark layout.

        The best mean per dataset is bolded: highest ARI, lowest MSE and
        W/B.  Stds carry the sample (N-1) convention.
        """
        def fmt(mean, std, best):
            if mean is None:
                return "-"
            cell = f"{mean:.3f}±{std:.3f}"
            return f"**{cell}**" if best else cell

        best: dict[tuple[str, str], float | None] = {}
        for r in self.rows:
            if r.error is not None:
                continue
            key_d = (r.dataset, "" if r.fraction is None else f"{r.fraction:g}")
            for metric, value, better in (
                ("ari", r.ari_mean, max), ("mse", r.mse_mean, min), ("wb", r.wb_mean, min),
            ):
                if value is None:
                    continue
                cur = best.get((metric, *key_d))
                best[(metric, *key_d)] = value if cur is None else better(cur, value)

        lines = [
            "| name | algorithm | dataset | K | fraction | ARI (mean±std, n-1) | MSE | W/B | iters | time (s) |",
            "|---|---|---|---|---|---|---|---|---|---|",
        ]
        for r in self.rows:
            if r.error is not None:
                lines.append(
                    f"| {r.name} | {r.algorithm} | {r.dataset} | {r.k} | "
                    f"{'-' if r.fraction is None else f'{r.fraction:g}'} | FAILED: {r.error} | | | | |"
                )
                continue
            key_d = (r.dataset, "" if r.fraction is None else f"{r.fraction:g}")
            cells = [
                r.name, r.algorithm, r.dataset, str(r.k),
                "-" if r.fraction is None else f"{r.fraction:g}",
                fmt(r.ari_mean, r.ari_std, r.ari_mean is not None and r.ari_mean == best.get(("ari", *key_d))),
                fmt(r.mse_mean, r.mse_std, r.mse_mean == best.get(("mse", *key_d))),
                fmt(r.wb_mean, r.wb_std, r.wb_mean == best.get(("wb", *key_d))),
                f"{r.iters_mean:.2f}±{r.iters_std:.2f}",
                f"{r.time_mean:.4f}±{r.time_std:.4f}",
            ]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = []
        for r in self.rows:
            row = {
                "name": r.name, "algorithm": r.algorithm, "dataset": r.dataset,
                "k": r.k, "fraction": r.fraction, "repeats": r.repeats,
                "ari": {"mean": r.ari_mean, "std": r.ari_std},
                "mse": {"mean": r.mse_mean, "std": r.mse_std},
                "wb": {"mean": r.wb_mean, "std": r.wb_std},
                "iterations": {"mean": r.iters_mean, "std": r.iters_std},
                "time_sec": {"mean": r.time_mean, "std": r.time_std},
                "error": r.error,
                "runs": list(r.runs),
            }
            payload.append(row)
        return json.dumps({"rows": payload}, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "md":
            return self.to_markdown()
        if fmt == "json":
            return self.to_json()
        raise UsageError(f"unknown format {fmt!r}; expected csv, md or json")


def _aggregate_runs(spec: RunSpec, dataset_name: str, records, fraction=None) -> BenchRow:
    aris = [rec["ari"] for rec in records if rec["ari"] is not None]
    ari_mean = ari_std = None
    if aris:
        ari_mean, ari_std = _mean_std(aris)
    mse_mean, mse_std = _mean_std([rec["mse"] for rec in records])
    wb_mean, wb_std = _mean_std([rec["wb"] for rec in records])
    it_mean, it_std = _mean_std([rec["iterations"] for rec in records])
    t_mean, t_std = _mean_std([rec["time_sec"] for rec in records])
    return BenchRow(
        name=spec.name or f"{spec.algorithm}/{dataset_name}",
        algorithm=spec.algorithm,
        dataset=dataset_name,
        k=spec.k,
        repeats=spec.repeats,
        fraction=fraction,
        ari_mean=ari_mean, ari_std=ari_std,
        mse_mean=mse_mean, mse_std=mse_std,
        wb_mean=wb_mean, wb_std=wb_std,
        iters_mean=it_mean, iters_std=it_std,
        time_mean=t_mean, time_std=t_std,
        runs=tuple(records),
    )


def run_bench(specs) -> BenchReport:
    """Execute every spec for its full repeat protocol and aggregate.

    A failing run marks its own cell as failed without touching the other
    cells; the report's ``failed`` flag then drives the nonzero exit of
    the CLI.
    """
    specs = list(specs)
    if not specs:
        raise UsageError("run_bench needs at least one spec")
    rows = []
    for spec in specs:
        try:
            data = resolve_dataset(spec)
            records = []
            for r in range(spec.repeats):
                seed = spec.base_seed + r
                result, report = run_once(spec, seed, data=data)
                records.append(
                    {
                        "seed": seed,
                        "ari": report.ari,
                        "mse": report.mse,
                        "wb": report.wb,
                        "iterations": result.iterations,
                        "time_sec": result.wall_time,
                        "loss_trace": [float(v) for v in result.loss_trace],
                    }
                )
            rows.append(_aggregate_runs(spec, data.name, records))
        except Exception as exc:  # noqa: BLE001 - cell isolation is the contract
            rows.append(
                BenchRow(
                    name=spec.name or f"{spec.algorithm}/{spec.data}",
                    algorithm=spec.algorithm,
                    dataset=str(getattr(spec.data, "name", spec.data)),
                    k=spec.k,
                    repeats=spec.repeats,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return BenchReport(tuple(rows))


def run_robustness(
    data,
    fractions,
    algorithms,
    repeats: int = 20,
    base_seed: int = 0,
    k: int | None = None,
    box_expansion: float = 2.0,
    **overrides,
) -> BenchReport:
    """Contamination sweep: one row per (algorithm, outlier fraction).

    Each repeat contaminates the base dataset with seed ``base_seed + r``
    and fits with the same seed.  ARI is scored on the original points
    only; the appended outliers keep their own label class and never enter
    the ground truth.
    """
    base_spec = RunSpec(algorithm="kmeans", data=data, k=1, **overrides)
    base = resolve_dataset(base_spec)
    if base.labels is None:
        raise UsageError("robustness runs need a labelled dataset")
    k = k if k is not None else base.n_classes
    rows = []
    for algo in algorithms:
        for fraction in fractions:
            spec = replace(base_spec, algorithm=algo, k=k, repeats=repeats, base_seed=base_seed)
            try:
                records = []
                for r in range(repeats):
                    seed = base_seed + r
                    noisy = contaminate(base, ContaminationSpec(fraction, box_expansion, seed=seed))
                    result = _dispatch(spec, noisy, seed)
                    ari = adjusted_rand_index(base.labels, result.labels[: base.n])
                    records.append(
                        {
                            "seed": seed,
                            "ari": ari,
                            "mse": clustering_mse(noisy, result.centers, result.labels),
                            "wb": wb_ratio(noisy, result.centers, result.labels),
                            "iterations": result.iterations,
                            "time_sec": result.wall_time,
                            "loss_trace": [float(v) for v in result.loss_trace],
                        }
                    )
                rows.append(_aggregate_runs(spec, base.name, records, fraction=fraction))
            except Exception as exc:  # noqa: BLE001
                rows.append(
                    BenchRow(
                        name=f"{algo}/{base.name}@{fraction:g}",
                        algorithm=algo,
                        dataset=base.name,
                        k=k,
                        repeats=repeats,
                        fraction=fraction,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )
    return BenchReport(tuple(rows))


_CONFIG_KEYS = {
    "algo", "data", "k", "repeats", "base_seed", "labels", "label_column",
    "standardize", "max_iter", "tol", "nu", "init", "ridge", "fast_alpha",
}


def load_config(path) -> list[RunSpec]:
    """Parse a plain-text bench config into run specs.

    INI sections, one per spec::

        [s1-kmeans]
        algo = kmeans
        data = blobs:k=15,n=300,p=2,std=0.6,seed=7
        k = 15
        repeats = 20
        base_seed = 0

    Optional keys: labels, label_column, standardize, max_iter, tol, nu,
    init, ridge, fast_alpha.
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise FormatError(f"{path}: cannot read config file")
    specs = []
    for section in parser.sections():
        body = parser[section]
        unknown = set(body) - _CONFIG_KEYS
        if unknown:
            raise FormatError(f"{path}: [{section}]: unknown keys {sorted(unknown)}")
        if "algo" not in body or "data" not in body or "k" not in body:
            raise FormatError(f"{path}: [{section}]: 'algo', 'data' and 'k' are required")
        try:
            spec = RunSpec(
                algorithm=body["algo"],
                data=body["data"],
                k=body.getint("k"),
                repeats=body.getint("repeats", fallback=1),
                base_seed=body.getint("base_seed", fallback=0),
                name=section,
                label_path=body.get("labels", fallback=None),
                label_column=body.get("label_column", fallback="last"),
                standardize=body.getboolean("standardize", fallback=False),
                max_iter=body.getint("max_iter", fallback=300),
                tol=body.getfloat("tol", fallback=1e-6),
                nu=body.getfloat("nu", fallback=None),
                init=body.get("init", fallback=None),
                ridge=body.getfloat("ridge", fallback=None),
                fast_alpha=body.getfloat("fast_alpha", fallback=1e-8),
            )
        except ValueError as exc:
            raise FormatError(f"{path}: [{section}]: {exc}") from exc
        specs.append(spec)
    if not specs:
        raise FormatError(f"{path}: config defines no run specs")
    return specs
