"""Result container shared by every fitting routine."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["ClusteringResult"]


@dataclass(frozen=True)
class ClusteringResult:
    """Outcome of one clustering fit.

    ``labels`` holds the hard assignment per sample, ``centers`` the final
    cluster representatives, ``loss_trace`` one objective value per
    iteration, and ``wall_time`` the seconds spent inside the fit (from a
    monotonic clock).  ``model`` carries the fitted parameter object of
    model-based methods and is None for the plain baselines.
    """

    labels: np.ndarray
    centers: np.ndarray
    loss_trace: np.ndarray
    iterations: int
    wall_time: float
    model: object | None = None

    def __post_init__(self):
        labels = np.array(self.labels, dtype=np.int64)
        centers = np.array(self.centers, dtype=np.float64)
        trace = np.array(self.loss_trace, dtype=np.float64)
        if labels.ndim != 1:
            raise DomainError("labels must be a 1-D vector")
        if centers.ndim != 2:
            raise DomainError("centers must be a (K, p) matrix")
        if labels.size and not (0 <= labels.min() and labels.max() < centers.shape[0]):
            raise DomainError("labels must lie in [0, K)")
        if trace.ndim != 1 or trace.shape[0] != self.iterations:
            raise DomainError("loss_trace must hold exactly one value per iteration")
        for arr, attr in ((labels, "labels"), (centers, "centers"), (trace, "loss_trace")):
            arr.flags.writeable = False
            object.__setattr__(self, attr, arr)

    @property
    def k(self) -> int:
        return self.centers.shape[0]
