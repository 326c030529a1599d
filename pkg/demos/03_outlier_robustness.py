"""Contamination sweep: ARI on the original points as outliers pour in.

Box-uniform outliers (their own label class, excluded from the ground
truth) are appended at increasing fractions; every algorithm is scored on
the original points only, averaged over seeded repeats.

Run:  python demos/03_outlier_robustness.py
"""

from tkmeans import generate_gaussian_blobs, run_robustness

base = generate_gaussian_blobs(
    n_clusters=4, per_cluster=75, n_features=2, center_box=8.0, cluster_std=0.5, seed=11, name="4blob"
)
report = run_robustness(
    base,
    fractions=[0.0, 0.05, 0.10, 0.20],
    algorithms=["kmeans", "kmedians", "tkmeans", "fast-tkmeans++"],
    repeats=10,
    base_seed=0,
)
print(report.to_markdown())

print("ARI drop from clean to 20% contamination:")
rows = {(r.algorithm, r.fraction): r.ari_mean for r in report.rows}
for algo in ("kmeans", "kmedians", "tkmeans", "fast-tkmeans++"):
    drop = rows[(algo, 0.0)] - rows[(algo, 0.2)]
    print(f"  {algo:16s} {drop:+.4f}")
