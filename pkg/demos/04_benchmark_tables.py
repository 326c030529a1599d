"""Benchmark tables: repeat protocol with mean±std per metric.

Builds the same kind of table the CLI's ``bench`` subcommand emits: every
cell is one algorithm on one dataset, repeated with seeds base_seed,
base_seed+1, ... and aggregated.  Best ARI / MSE / W-B per dataset is
bolded in the Markdown rendering.

Run:  python demos/04_benchmark_tables.py
"""

from tkmeans import RunSpec, run_bench

S1_LIKE = "blobs:k=15,n=100,p=2,std=0.45,box=10,seed=43"
UNBALANCED = "blobs:k=3,n=60,p=2,std=0.6,box=7,seed=5"

specs = [
    RunSpec(algorithm=a, data=S1_LIKE, k=15, repeats=8, base_seed=0, name=f"{a}/s1-like")
    for a in ("kmeans", "kmeans++", "tkmeans", "fast-tkmeans", "fast-tkmeans++")
] + [
    RunSpec(algorithm=a, data=UNBALANCED, k=3, repeats=8, base_seed=0, name=f"{a}/3blob")
    for a in ("kmeans", "gmm", "tmm", "tkmeans")
]

report = run_bench(specs)
print(report.to_markdown())
print("CSV flavour of the first rows:\n")
print("\n".join(report.to_csv().splitlines()[:4]))
