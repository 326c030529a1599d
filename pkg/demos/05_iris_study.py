"""Iris study: all nine algorithms on the classic 150x4 table.

Standardized features, 20 seeded repeats per method; reports ARI / MSE /
W-B and the running cost, mirroring the layout used for real-world
benchmark tables.

Run:  python demos/05_iris_study.py
"""

from pathlib import Path

from tkmeans import ALGORITHMS, RunSpec, run_bench

iris = Path(__file__).resolve().parent.parent / "data" / "iris.csv"

specs = [
    RunSpec(
        algorithm=algo,
        data=str(iris),
        k=3,
        repeats=20,
        base_seed=0,
        standardize=True,
        name=algo,
    )
    for algo in ALGORITHMS
]
report = run_bench(specs)
print(report.to_markdown())
