"""Lagged design matrices for the nested regression models.

A design row for target time ``t`` is laid out lag-major: for each lag in
ascending order (lag 0 first when present values are requested) the values
of x, then every y column, then every z column at ``t - lag``. Series that
a variant does not use are simply skipped.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ConfigError,
    EmptyVariantGroup,
    InsufficientLength,
    ShiftTooLarge,
)
from .panel import TimeSeriesPanel


class ModelVariant(enum.Enum):
    X_ONLY = "x"
    X_AND_Y = "xy"
    X_AND_Z = "xz"
    X_Y_AND_Z = "xyz"

    @property
    def uses_y(self) -> bool:
        return self in (ModelVariant.X_AND_Y, ModelVariant.X_Y_AND_Z)

    @property
    def uses_z(self) -> bool:
        return self in (ModelVariant.X_AND_Z, ModelVariant.X_Y_AND_Z)


@dataclass(frozen=True)
class LagSpec:
    """Which past lags enter a design.

    ``include_present_y`` adds ``y_t`` (instantaneous coupling);
    ``include_present_z`` conditions on ``z_t`` rather than only on the past
    of the side information.
    """

    lags: tuple = (1,)
    include_present_y: bool = False
    include_present_z: bool = False

    def __post_init__(self):
        lags = tuple(int(k) for k in self.lags)
        if not lags and not self.include_present_y:
            raise ConfigError("a lag set must be non-empty unless present y is included")
        if any(k < 1 for k in lags):
            raise ConfigError(f"lags must be positive integers, got {lags}")
        if list(lags) != sorted(set(lags)):
            raise ConfigError(f"lags must be strictly ascending without duplicates, got {lags}")
        object.__setattr__(self, "lags", lags)

    @classmethod
    def upto(cls, p: int, **kw) -> "LagSpec":
        """Contiguous range 1..p."""
        return cls(tuple(range(1, p + 1)), **kw)

    @classmethod
    def parse(cls, text: str, **kw) -> "LagSpec":
        """Parse ``"1,2,3"``, ``"1-3"`` or mixtures like ``"1-3,7"``."""
        lags = set()
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            if "-" in part:
                lo, hi = part.split("-", 1)
                lags.update(range(int(lo), int(hi) + 1))
            else:
                lags.add(int(part))
        return cls(tuple(sorted(lags)), **kw)

    @property
    def max_lag(self) -> int:
        return max(self.lags, default=0)

    def __str__(self):
        s = ",".join(str(k) for k in self.lags)
        if self.include_present_y:
            s = "0" + ("," + s if s else "")
        return s


@dataclass(frozen=True)
class LagDesign:
    """Target vector and design matrix for one model variant."""

    target: np.ndarray
    design: np.ndarray
    row_times: np.ndarray
    labels: tuple = ()

    @property
    def m(self) -> int:
        return self.target.shape[0]

    @property
    def d(self) -> int:
        return self.design.shape[1]


def design_blocks(x, y, z, spec: LagSpec, variant: ModelVariant):
    """Assemble target and design from raw arrays.

    ``x`` is a length-n vector, ``y`` and ``z`` are ``(n, k)`` arrays (k may be
    zero). Returns ``(target, design, row_times, labels)``.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    y = np.asarray(y, dtype=float).reshape(n, -1)
    z = np.asarray(z, dtype=float).reshape(n, -1)
    if variant.uses_y and y.shape[1] == 0:
        raise EmptyVariantGroup(f"variant {variant.name} needs at least one cause column")
    if variant.uses_z and z.shape[1] == 0:
        raise EmptyVariantGroup(f"variant {variant.name} needs at least one side column")
    p = spec.max_lag
    if n - p < 1:
        raise InsufficientLength(f"series of length {n} is too short for max lag {p}")
    times = np.arange(p, n)

    blocks, labels = [], []
    present_y = spec.include_present_y and variant.uses_y
    present_z = spec.include_present_z and variant.uses_z
    if present_y or present_z:
        if present_y:
            blocks.append(y[times])
            labels += [f"y{j}[t]" for j in range(y.shape[1])]
        if present_z:
            blocks.append(z[times])
            labels += [f"z{j}[t]" for j in range(z.shape[1])]
    for k in spec.lags:
        blocks.append(x[times - k, None])
        labels.append(f"x[t-{k}]")
        if variant.uses_y:
            blocks.append(y[times - k])
            labels += [f"y{j}[t-{k}]" for j in range(y.shape[1])]
        if variant.uses_z:
            blocks.append(z[times - k])
            labels += [f"z{j}[t-{k}]" for j in range(z.shape[1])]
    design = np.hstack(blocks) if blocks else np.empty((times.size, 0))
    return x[times].copy(), np.ascontiguousarray(design), times, tuple(labels)


def build_design(
    panel: TimeSeriesPanel,
    target_col: str,
    y_cols: Sequence[str],
    z_cols: Sequence[str],
    spec: LagSpec,
    variant: ModelVariant,
) -> LagDesign:
    """Build the lagged design for ``variant`` from named panel columns."""
    x = panel.column(target_col)
    y = panel.array(list(y_cols) if variant.uses_y else [])
    z = panel.array(list(z_cols) if variant.uses_z else [])
    if variant.uses_y and not y_cols:
        raise EmptyVariantGroup(f"variant {variant.name} needs at least one cause column")
    if variant.uses_z and not z_cols:
        raise EmptyVariantGroup(f"variant {variant.name} needs at least one side column")
    target, design, times, labels = design_blocks(x, y, z, spec, variant)
    return LagDesign(target, design, times, labels)


def shift_column(series, k: int) -> np.ndarray:
    """Shift a series by ``k`` positions.

    For ``k > 0`` the result is ``series[:n-k]``; element ``i`` pairs with
    element ``i + k`` of an unshifted partner, i.e. with ``partner[k:]``.
    So if ``y[k:] ~ shift_column(x, k)`` then x leads y by ``k`` steps.
    Negative ``k`` drops the head instead. Output length is ``n - |k|``.
    """
    v = np.asarray(series, dtype=float)
    n = v.shape[0]
    if abs(k) >= n:
        raise ShiftTooLarge(f"shift {k} too large for series of length {n}")
    if k >= 0:
        return v[: n - k].copy()
    return v[-k:].copy()
