"""Internal helpers shared by the fitting routines."""

from __future__ import annotations

import numpy as np

from .errors import DomainError

# All stochastic code paths go through numpy's PCG64 via default_rng.


def check_k(k: int, n: int) -> int:
    k = int(k)
    if k < 1:
        raise DomainError(f"K must be >= 1, got {k}")
    if k > n:
        raise DomainError(f"K={k} exceeds the number of samples N={n}")
    return k


def pairwise_sq_dists(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, shape (N, K)."""
    diff = x[:, None, :] - centers[None, :, :]
    return np.einsum("nkp,nkp->nk", diff, diff)


def pairwise_l1_dists(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Manhattan distances, shape (N, K)."""
    return np.abs(x[:, None, :] - centers[None, :, :]).sum(axis=2)


def kmeanspp_indices(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """D^2-weighted seeding; returns k distinct row indices."""
    n = x.shape[0]
    chosen = np.empty(k, dtype=np.int64)
    chosen[0] = int(rng.integers(n))
    d2 = ((x - x[chosen[0]]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = float(d2.sum())
        if total > 0.0:
            nxt = int(rng.choice(n, p=d2 / total))
        else:
            # all remaining mass vanished (duplicate points): uniform fallback
            remaining = np.setdiff1d(np.arange(n), chosen[:j])
            nxt = int(rng.choice(remaining))
        chosen[j] = nxt
        d2 = np.minimum(d2, ((x - x[nxt]) ** 2).sum(axis=1))
    return chosen


def init_centers(x: np.ndarray, k: int, rng: np.random.Generator, init):
    """Resolve an init request to (centers, indices-or-None).

    ``init`` is "random" (k distinct data points), "kmeanspp", or an
    explicit (k, p) array of coordinates.
    """
    if isinstance(init, str):
        if init == "random":
            idx = rng.choice(x.shape[0], size=k, replace=False).astype(np.int64)
        elif init == "kmeanspp":
            idx = kmeanspp_indices(x, k, rng)
        else:
            raise DomainError(f"unknown init {init!r}; expected 'random', 'kmeanspp' or an array")
        return x[idx].copy(), idx
    centers = np.array(init, dtype=np.float64)
    if centers.shape != (k, x.shape[1]):
        raise DomainError(f"explicit centers must have shape ({k}, {x.shape[1]}), got {centers.shape}")
    if not np.isfinite(centers).all():
        raise DomainError("explicit centers must be finite")
    return centers, None


def reseed_empty_clusters(x, assign, centers, dist_assigned, k, metric="sq"):
    """Re-seed each empty cluster to the point farthest from its assigned center.

    After a re-seed the selection distances are refreshed against the new
    center, so coincident duplicates of an already-used point cannot be
    picked for the next empty cluster.  Returns (assign, centers,
    dist_assigned, moved) with copies only when a re-seed happened;
    ``moved`` lists (cluster, point_index) pairs.
    """
    counts = np.bincount(assign, minlength=k)
    if (counts > 0).all():
        return assign, centers, dist_assigned, []
    assign = assign.copy()
    centers = centers.copy()
    dist = dist_assigned.copy()
    selection = dist.copy()
    moved: list[tuple[int, int]] = []
    while True:
        empties = np.flatnonzero(counts == 0)
        if empties.size == 0:
            break
        k_empty = int(empties[0])
        # only points from clusters with >1 members are eligible to move
        eligible = counts[assign] > 1
        cand = int(np.argmax(np.where(eligible, selection, -1.0)))
        counts[assign[cand]] -= 1
        counts[k_empty] += 1
        centers[k_empty] = x[cand]
        assign[cand] = k_empty
        dist[cand] = 0.0
        if metric == "sq":
            to_new = ((x - x[cand]) ** 2).sum(axis=1)
        else:
            to_new = np.abs(x - x[cand]).sum(axis=1)
        selection = np.minimum(selection, to_new)
        moved.append((k_empty, cand))
    return assign, centers, dist, moved


def cluster_means(x: np.ndarray, assign: np.ndarray, k: int) -> np.ndarray:
    means = np.empty((k, x.shape[1]), dtype=np.float64)
    for j in range(k):
        means[j] = x[assign == j].mean(axis=0)
    return means
