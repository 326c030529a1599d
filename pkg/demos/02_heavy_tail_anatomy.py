"""Anatomy of one EM step: how the precision weights mute far points.

The E-step attaches a weight u = (nu+p)/(nu + d^2/alpha) to every
sample/center pair.  Near points get u close to (nu+p)/nu, far points get
u ~ alpha*(nu+p)/d^2, so a gross outlier contributes almost nothing to the
center update.  The loss grows like ln(1 + d^2/(nu*alpha)) instead of d^2,
which is the same muting seen from the objective side.

Run:  python demos/02_heavy_tail_anatomy.py
"""

import numpy as np

from tkmeans import Dataset, TkModel, e_step, log_l2_loss

cluster = np.concatenate([np.random.default_rng(1).normal(0.0, 0.5, 24), [25.0]])
data = Dataset(cluster[:, None])
model = TkModel(centers=[[0.0]], alpha=0.25, nu=2.0)

e = e_step(data, model)
order = np.argsort(np.abs(cluster))
print("sample        u-weight")
for i in order[[0, 5, 10, 15, 20, 23, 24]]:
    print(f"{cluster[i]:8.3f}   {e.u[i, 0]:10.5f}")

w = e.tau[:, 0] * e.u[:, 0]
weighted_mean = float(w @ cluster / w.sum())
print(f"\nplain mean          : {cluster.mean():8.4f}   (yanked by the outlier at 25)")
print(f"weighted center step: {weighted_mean:8.4f}   (outlier weight {e.u[-1, 0]:.5f})")

print("\nloss growth, squared vs log-of-squared:")
print("   d        d^2     ln(1 + d^2/(nu*alpha))")
for d in (0.5, 1.0, 3.0, 10.0, 25.0):
    tau = np.array([[1.0]])
    point = Dataset([[d]])
    print(f"{d:6.1f} {d*d:9.2f} {log_l2_loss(point, model, tau):12.4f}")
