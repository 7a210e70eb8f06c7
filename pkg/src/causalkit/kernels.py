"""Kernel functions, Gram matrices, centering and the median heuristic.

The Gaussian kernel is ``exp(-||a - b||^2 / sigma^2)``, without the factor
of two found in many libraries. Widths from the CV grid and the median
heuristic are therefore on this scale.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .errors import AllPointsIdentical, AlreadyCentered, ConfigError, DimensionMismatch


class KernelKind(enum.Enum):
    LINEAR = "linear"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind = KernelKind.GAUSSIAN
    sigma: Optional[float] = None

    def __post_init__(self):
        kind = KernelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.sigma is not None:
            if not self.sigma > 0:
                raise ConfigError(f"kernel width must be positive, got {self.sigma}")
            object.__setattr__(self, "sigma", float(self.sigma))

    @classmethod
    def linear(cls) -> "KernelSpec":
        return cls(KernelKind.LINEAR)

    @classmethod
    def gaussian(cls, sigma: Optional[float] = None) -> "KernelSpec":
        return cls(KernelKind.GAUSSIAN, sigma)

    @property
    def resolved(self) -> bool:
        return self.kind is KernelKind.LINEAR or self.sigma is not None

    def with_sigma(self, sigma: float) -> "KernelSpec":
        return KernelSpec(self.kind, sigma)

    def resolve(self, rows) -> "KernelSpec":
        """Fill a missing Gaussian width with the median heuristic on ``rows``."""
        if self.resolved:
            return self
        return self.with_sigma(median_heuristic(rows))


@dataclass(frozen=True)
class GramMatrix:
    values: np.ndarray
    centered: bool = False

    @property
    def m(self) -> int:
        return self.values.shape[0]


def _as_rows(rows) -> np.ndarray:
    rows = np.asarray(rows, dtype=float)
    if rows.ndim == 1:
        rows = rows[:, None]
    return rows


def _require_sigma(spec: KernelSpec) -> float:
    if spec.sigma is None:
        raise ConfigError("Gaussian kernel width is unresolved; call KernelSpec.resolve first")
    return spec.sigma


def kernel_eval(spec: KernelSpec, a, b) -> float:
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise DimensionMismatch(f"vectors of dimension {a.size} and {b.size}")
    if spec.kind is KernelKind.LINEAR:
        return float(np.dot(a, b))
    sigma = _require_sigma(spec)
    diff = a - b
    return float(np.exp(-np.dot(diff, diff) / (sigma * sigma)))


def cross_gram(spec: KernelSpec, a, b) -> np.ndarray:
    """Rectangular block ``k(a_i, b_j)``."""
    a = _as_rows(a)
    b = _as_rows(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(f"rows of dimension {a.shape[1]} and {b.shape[1]}")
    if spec.kind is KernelKind.LINEAR:
        return a @ b.T
    return _backend.gaussian_gram(a, b, _require_sigma(spec))


def gram(spec: KernelSpec, rows) -> GramMatrix:
    rows = _as_rows(rows)
    values = cross_gram(spec, rows, rows)
    if spec.kind is KernelKind.LINEAR:
        values = 0.5 * (values + values.T)
    return GramMatrix(values, centered=False)


def center_values(values) -> np.ndarray:
    """``H K H`` with ``H = I - 1/m``; works on raw arrays."""
    k = np.asarray(values, dtype=float)
    row = k.mean(axis=1, keepdims=True)
    col = k.mean(axis=0, keepdims=True)
    out = k - row - col + k.mean()
    return 0.5 * (out + out.T)


def center(g: GramMatrix) -> GramMatrix:
    if g.centered:
        raise AlreadyCentered("Gram matrix is already centered")
    return GramMatrix(center_values(g.values), centered=True)


def median_heuristic(rows, squared: bool = False) -> float:
    """Median pairwise Euclidean distance over distinct pairs ``i < j``.

    Zero distances stay in the pool; an even count averages the two middle
    values. ``squared=True`` takes the median of squared distances instead.
    """
    rows = _as_rows(rows)
    if rows.shape[0] < 2:
        raise AllPointsIdentical("median heuristic needs at least two rows")
    dists = _backend.condensed_distances(rows)
    if squared:
        dists = dists * dists
    med = float(np.median(dists))
    if not med > 0:
        raise AllPointsIdentical("median pairwise distance is zero")
    return med
