"""Linear and kernelised Geweke indices.

Both nested models are fitted by kernel ridge regression with one shared
kernel and regulariser over identical target rows; the index is the log of
the restricted-to-full residual variance ratio (nats). The linear Geweke
measure is the LINEAR-kernel path with a tiny regulariser.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .embedding import LagSpec, ModelVariant, design_blocks
from .errors import ConfigError, DegenerateVariance
from .kernels import KernelSpec, gram
from .krr import ridge_residual_variance
from .panel import TimeSeriesPanel

LINEAR_GAMMA = 1e-8
DEGENERATE_VARIANCE = 1e-15


@dataclass(frozen=True)
class GewekeIndex:
    value: float
    restricted_var: float
    full_var: float
    variant_pair: tuple
    kernel: KernelSpec = None
    gamma: float = None


def nested_variants(has_side: bool) -> tuple:
    if has_side:
        return ModelVariant.X_AND_Z, ModelVariant.X_Y_AND_Z
    return ModelVariant.X_ONLY, ModelVariant.X_AND_Y


def log_ratio(restricted_var: float, full_var: float) -> float:
    if full_var <= DEGENERATE_VARIANCE:
        raise DegenerateVariance(
            f"full-model residual variance {full_var:.3g} is zero; gamma is too small"
        )
    if restricted_var <= DEGENERATE_VARIANCE:
        raise DegenerateVariance(
            f"restricted-model residual variance {restricted_var:.3g} is zero; gamma is too small"
        )
    return float(np.log(restricted_var / full_var))


def model_variance(design: np.ndarray, target: np.ndarray, kernel: KernelSpec, gamma: float) -> float:
    return ridge_residual_variance(gram(kernel, design).values, target, gamma)


class GewekeProblem:
    """The two nested regressions for one ``cause -> target || side`` question.

    The restricted model never sees the cause, so it is fitted once; surrogate
    evaluations only refit the full model via :meth:`full_variance`.
    """

    def __init__(self, x, y, z, spec: LagSpec, kernel: KernelSpec, gamma: float):
        if not gamma > 0:
            raise ConfigError(f"gamma must be positive, got {gamma}")
        self.x = np.asarray(x, dtype=float)
        n = self.x.shape[0]
        self.z = np.asarray(z, dtype=float).reshape(n, -1)
        self.spec = spec
        self.gamma = float(gamma)
        self.restricted_variant, self.full_variant = nested_variants(self.z.shape[1] > 0)
        y = np.asarray(y, dtype=float).reshape(n, -1)
        target, full, _, _ = design_blocks(self.x, y, self.z, spec, self.full_variant)
        self.target = target
        self.kernel = kernel.resolve(full)
        _, restricted, _, _ = design_blocks(self.x, y, self.z, spec, self.restricted_variant)
        self.restricted_var = model_variance(restricted, target, self.kernel, self.gamma)

    def full_variance(self, y) -> float:
        y = np.asarray(y, dtype=float).reshape(self.x.shape[0], -1)
        _, full, _, _ = design_blocks(self.x, y, self.z, self.spec, self.full_variant)
        return model_variance(full, self.target, self.kernel, self.gamma)

    def index(self, y) -> GewekeIndex:
        full_var = self.full_variance(y)
        return GewekeIndex(
            log_ratio(self.restricted_var, full_var),
            self.restricted_var,
            full_var,
            (self.restricted_variant, self.full_variant),
            self.kernel,
            self.gamma,
        )


def _arrays(panel, target, cause, side):
    cause = [cause] if isinstance(cause, str) else list(cause)
    side = [side] if isinstance(side, str) else list(side or [])
    if not cause:
        raise ConfigError("at least one cause column is required")
    return panel.column(target), panel.array(cause), panel.array(side)


def geweke_causality(
    panel: TimeSeriesPanel,
    target: str,
    cause: Sequence[str],
    side: Sequence[str] = (),
    spec: LagSpec = LagSpec(),
    kernel: KernelSpec = KernelSpec.linear(),
    gamma: float = LINEAR_GAMMA,
) -> GewekeIndex:
    """Index of ``cause -> target`` given ``side``, using lagged values only.

    An unresolved Gaussian width is set by the median heuristic on the full
    model's design rows and shared by both models.
    """
    if spec.include_present_y:
        spec = dataclasses.replace(spec, include_present_y=False)
        if not spec.lags:
            raise ConfigError("causality needs at least one positive lag")
    x, y, z = _arrays(panel, target, cause, side)
    return GewekeProblem(x, y, z, spec, kernel, gamma).index(y)


def geweke_instantaneous(
    panel: TimeSeriesPanel,
    target: str,
    cause: Sequence[str],
    side: Sequence[str] = (),
    spec: LagSpec = LagSpec(),
    kernel: KernelSpec = KernelSpec.linear(),
    gamma: float = LINEAR_GAMMA,
) -> GewekeIndex:
    """Instantaneous-coupling index: the full model also sees ``y_t``."""
    spec = dataclasses.replace(spec, include_present_y=True)
    x, y, z = _arrays(panel, target, cause, side)
    return GewekeProblem(x, y, z, spec, kernel, gamma).index(y)
