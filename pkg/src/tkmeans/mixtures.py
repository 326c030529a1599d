"""Full-covariance Gaussian and t mixture models fit by EM.

These are the classical model-based baselines: free mixing weights, one
full covariance matrix per component (stabilized by a ridge), and for the
t mixture a shared degrees-of-freedom parameter estimated by the same
closed-form approximation the core algorithm uses.  Means default to
k-means++ seeding, covariances to the global data scatter, and weights to
uniform.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import _util
from .baselines import BaselineConfig
from .datasets import Dataset
from .errors import DomainError, NumericalError
from .results import ClusteringResult
from .specialfn import digamma, log_gamma, log_sum_exp

__all__ = ["MixtureModel", "gmm_fit", "tmm_fit"]

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class MixtureModel:
    """Mixture parameters; ``nu`` is None for the Gaussian case."""

    weights: np.ndarray  # (K,), on the simplex
    means: np.ndarray  # (K, p)
    covariances: np.ndarray  # (K, p, p), symmetric positive definite
    nu: float | None = None


def _default_cfg(cfg: BaselineConfig | None) -> BaselineConfig:
    return cfg if cfg is not None else BaselineConfig(init="kmeanspp")


def _default_ridge(x: np.ndarray, ridge: float | None) -> float:
    if ridge is not None:
        if ridge < 0:
            raise DomainError(f"ridge must be >= 0, got {ridge}")
        return float(ridge)
    return 1e-6 * float(x.var(axis=0, ddof=1).mean())


def _init_mixture(data: Dataset, k: int, cfg: BaselineConfig, ridge: float):
    x = data.samples
    rng = np.random.default_rng(cfg.seed)
    means, _ = _util.init_centers(x, k, rng, cfg.init)
    base = np.cov(x, rowvar=False, ddof=0).reshape(data.p, data.p)
    covs = np.repeat((base + ridge * np.eye(data.p))[None, :, :], k, axis=0)
    weights = np.full(k, 1.0 / k)
    return weights, means, covs


def _maha_logdet(x: np.ndarray, mean: np.ndarray, cov: np.ndarray, j: int):
    """Mahalanobis distances to one component and its covariance log-determinant."""
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"component {j}: covariance is singular") from exc
    y = np.linalg.solve(chol, (x - mean).T)
    return (y * y).sum(axis=0), 2.0 * float(np.log(np.diag(chol)).sum())


def _finish(x, weights, means, covs, log_r_fn, trace, start, nu=None):
    log_r = log_r_fn(weights, means, covs)
    labels = log_r.argmax(axis=1)
    wall = time.perf_counter() - start
    model = MixtureModel(weights.copy(), means.copy(), covs.copy(), nu=nu)
    result = ClusteringResult(labels, means.copy(), np.asarray(trace), len(trace), wall, model=model)
    return result, model


def gmm_fit(
    data: Dataset,
    k: int,
    cfg: BaselineConfig | None = None,
    *,
    ridge: float | None = None,
    constrained_alpha: float | None = None,
):
    """EM for a Gaussian mixture; returns (ClusteringResult, MixtureModel).

    Responsibilities are normalized in log space; each M-step covariance
    gains ``ridge`` times the identity (default 1e-6 of the mean feature
    variance).  The loss trace carries the observed-data log likelihood,
    which is non-decreasing.

    ``constrained_alpha`` switches on a reduced mode used for equivalence
    testing: weights stay uniform and every covariance is pinned to
    ``alpha * I``, so only the means are re-estimated.
    """
    cfg = _default_cfg(cfg)
    k = _util.check_k(k, data.n)
    if data.n < 2:
        raise DomainError("mixture fits need at least 2 samples")
    x = data.samples
    ridge_v = _default_ridge(x, ridge)
    start = time.perf_counter()
    weights, means, covs = _init_mixture(data, k, cfg, ridge_v)
    if constrained_alpha is not None:
        if constrained_alpha <= 0:
            raise DomainError(f"constrained_alpha must be > 0, got {constrained_alpha}")
        covs = np.repeat((constrained_alpha * np.eye(data.p))[None, :, :], k, axis=0)

    def log_resp(weights, means, covs):
        log_r = np.empty((data.n, k))
        for j in range(k):
            maha, logdet = _maha_logdet(x, means[j], covs[j], j)
            log_r[:, j] = math.log(weights[j]) - 0.5 * (data.p * _LOG_2PI + logdet + maha)
        return log_r

    trace: list[float] = []
    prev_ll = None
    for _ in range(cfg.max_iter):
        log_r = log_resp(weights, means, covs)
        row_ll = log_sum_exp(log_r, axis=1)
        ll = float(row_ll.sum())
        trace.append(ll)
        if prev_ll is not None and abs(ll - prev_ll) < cfg.tol * max(abs(prev_ll), 1e-12):
            break
        prev_ll = ll
        r = np.exp(log_r - row_ll[:, None])
        nk = r.sum(axis=0)
        if constrained_alpha is not None:
            for j in range(k):
                if nk[j] > 0.0:
                    means[j] = (r[:, j] @ x) / nk[j]
            continue
        if (nk <= 0.0).any():
            raise NumericalError(f"component {int(np.argmin(nk))} collapsed (zero responsibility mass)")
        weights = nk / data.n
        means = (r.T @ x) / nk[:, None]
        for j in range(k):
            diff = x - means[j]
            covs[j] = ((r[:, j, None] * diff).T @ diff) / nk[j] + ridge_v * np.eye(data.p)
    return _finish(x, weights, means, covs, log_resp, trace, start)


def tmm_fit(
    data: Dataset,
    k: int,
    cfg: BaselineConfig | None = None,
    *,
    ridge: float | None = None,
    fixed_nu: float | None = None,
    init_nu: float = 3.0,
    nu_bounds: tuple[float, float] = (1.0, 200.0),
):
    """EM for a t mixture with full covariances and one shared nu.

    The precision weights u = (nu+p)/(nu + maha^2) discount far points in
    the mean and scatter updates; ``nu`` is re-estimated each iteration
    through the closed-form approximation unless ``fixed_nu`` pins it.
    Returns (ClusteringResult, MixtureModel).
    """
    cfg = _default_cfg(cfg)
    k = _util.check_k(k, data.n)
    if data.n < 2:
        raise DomainError("mixture fits need at least 2 samples")
    x = data.samples
    p = data.p
    ridge_v = _default_ridge(x, ridge)
    nu = float(fixed_nu) if fixed_nu is not None else float(init_nu)
    if nu <= 0:
        raise DomainError(f"nu must be > 0, got {nu}")
    start = time.perf_counter()
    weights, means, covs = _init_mixture(data, k, cfg, ridge_v)

    def log_resp_maha(weights, means, covs):
        log_r = np.empty((data.n, k))
        maha = np.empty((data.n, k))
        const = log_gamma((nu + p) / 2.0) - log_gamma(nu / 2.0) - 0.5 * p * math.log(nu * math.pi)
        for j in range(k):
            mj, logdet = _maha_logdet(x, means[j], covs[j], j)
            maha[:, j] = mj
            log_r[:, j] = math.log(weights[j]) + const - 0.5 * logdet - 0.5 * (nu + p) * np.log1p(mj / nu)
        return log_r, maha

    trace: list[float] = []
    prev_ll = None
    for _ in range(cfg.max_iter):
        log_r, maha = log_resp_maha(weights, means, covs)
        row_ll = log_sum_exp(log_r, axis=1)
        ll = float(row_ll.sum())
        trace.append(ll)
        if prev_ll is not None and abs(ll - prev_ll) < cfg.tol * max(abs(prev_ll), 1e-12):
            break
        prev_ll = ll
        r = np.exp(log_r - row_ll[:, None])
        u = (nu + p) / (nu + maha)
        ru = r * u
        nk = r.sum(axis=0)
        mass = ru.sum(axis=0)
        if (nk <= 0.0).any() or (mass <= 0.0).any():
            raise NumericalError(f"component {int(np.argmin(nk))} collapsed (zero responsibility mass)")
        weights = nk / data.n
        means = (ru.T @ x) / mass[:, None]
        for j in range(k):
            diff = x - means[j]
            covs[j] = ((ru[:, j, None] * diff).T @ diff) / nk[j] + ridge_v * np.eye(p)
        if fixed_nu is None:
            half = (nu + p) / 2.0
            log_u_expect = np.log(u) + digamma(half) - math.log(half)
            eta = 1.0 + float(((r * (log_u_expect - u)).sum(axis=0) / nk).mean())
            lo, hi = nu_bounds
            nu = hi if eta >= 0.0 else min(max(-1.0 / eta, lo), hi)

    def log_resp(weights, means, covs):
        return log_resp_maha(weights, means, covs)[0]

    return _finish(x, weights, means, covs, log_resp, trace, start, nu=nu)
