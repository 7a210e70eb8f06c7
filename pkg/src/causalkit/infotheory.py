"""Plug-in (naive histogram) entropy, mutual information and transfer entropy.

All quantities are in nats. Every decomposition takes its marginals from a
single joint histogram, which keeps plug-in MI and TE non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .errors import ConfigError, ExplicitRangeExcludesSample, LagTooLarge, LengthMismatch

DEFAULT_BINS = 4


@dataclass(frozen=True)
class HistogramSpec:
    """Equal-width bins per dimension.

    ``ranges=None`` uses each dimension's sample min/max; otherwise one
    ``(lo, hi)`` pair per dimension.
    """

    bins_per_dim: int = DEFAULT_BINS
    ranges: Optional[tuple] = None

    def __post_init__(self):
        if int(self.bins_per_dim) < 2:
            raise ConfigError(f"need at least 2 bins per dimension, got {self.bins_per_dim}")
        object.__setattr__(self, "bins_per_dim", int(self.bins_per_dim))
        if self.ranges is not None:
            ranges = tuple((float(lo), float(hi)) for lo, hi in self.ranges)
            if any(not hi > lo for lo, hi in ranges):
                raise ConfigError("explicit ranges need hi > lo")
            object.__setattr__(self, "ranges", ranges)


@dataclass(frozen=True)
class JointHistogram:
    counts: np.ndarray
    total: int

    @property
    def dims(self) -> int:
        return self.counts.ndim

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / self.total

    def marginal(self, keep: Sequence[int]) -> "JointHistogram":
        """Sum out every axis not listed in ``keep`` (order preserved)."""
        drop = tuple(ax for ax in range(self.dims) if ax not in keep)
        return JointHistogram(self.counts.sum(axis=drop), self.total)


def histogram(samples, spec: HistogramSpec = HistogramSpec()) -> JointHistogram:
    x = np.asarray(samples, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n, d = x.shape
    if n < 1:
        raise ConfigError("histogram needs at least one sample")
    if spec.ranges is None:
        lo = x.min(axis=0)
        hi = x.max(axis=0)
    else:
        if len(spec.ranges) != d:
            raise ConfigError(f"{len(spec.ranges)} explicit ranges for {d} dimensions")
        lo = np.array([r[0] for r in spec.ranges])
        hi = np.array([r[1] for r in spec.ranges])
        if np.any(x < lo) or np.any(x > hi):
            raise ExplicitRangeExcludesSample("a sample lies outside the explicit histogram range")
    b = spec.bins_per_dim
    counts = _backend.histogram_counts(x, lo, hi, b)
    return JointHistogram(counts.reshape((b,) * d), n)


def entropy_from_counts(counts) -> float:
    c = np.asarray(counts, dtype=float).ravel()
    c = c[c > 0]
    total = c.sum()
    p = c / total
    return float(-np.sum(p * np.log(p)))


def entropy(h: JointHistogram) -> float:
    return entropy_from_counts(h.counts)


def _check_equal(*arrays):
    n = len(arrays[0])
    if any(len(a) != n for a in arrays):
        raise LengthMismatch("series must have equal lengths")
    if n < 1:
        raise LengthMismatch("series must be non-empty")


def mutual_information(u, v, spec: HistogramSpec = HistogramSpec()) -> float:
    u = np.asarray(u, dtype=float).ravel()
    v = np.asarray(v, dtype=float).ravel()
    _check_equal(u, v)
    return mutual_information_from_joint(histogram(np.column_stack([u, v]), spec))


def mutual_information_from_joint(h: JointHistogram) -> float:
    return entropy(h.marginal([0])) + entropy(h.marginal([1])) - entropy(h)


def te_samples(x, y, lag: int) -> np.ndarray:
    """Rows ``(x_t, x_{t-1}, y_{t-lag})`` for every admissible ``t``."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    _check_equal(x, y)
    if lag < 1:
        raise ConfigError("transfer entropy needs lag >= 1; use mutual information for lag 0")
    n = x.shape[0]
    start = max(1, lag)
    if n <= start:
        raise LagTooLarge(f"lag {lag} leaves no samples in a series of length {n}")
    t = np.arange(start, n)
    return np.column_stack([x[t], x[t - 1], y[t - lag]])


def transfer_entropy_from_joint(h: JointHistogram) -> float:
    """``H(Xt,Xp) - H(Xp) - H(Xt,Xp,Y) + H(Xp,Y)`` on axes (Xt, Xp, Y)."""
    return (
        entropy(h.marginal([0, 1]))
        - entropy(h.marginal([1]))
        - entropy(h)
        + entropy(h.marginal([1, 2]))
    )


def transfer_entropy(x, y, lag: int = 1, spec: HistogramSpec = HistogramSpec()) -> float:
    """Bivariate transfer entropy ``y -> x`` with one own-past lag."""
    return transfer_entropy_from_joint(histogram(te_samples(x, y, lag), spec))
