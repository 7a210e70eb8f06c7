"""Declarative causality queries and their evaluation on a panel.

``bind`` turns a query and a panel into a callable of the (possibly
shuffled) raw cause columns. Everything that does not depend on the cause
is computed once at bind time, which is what makes permutation tests cheap.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .embedding import LagSpec
from .errors import ConfigError
from .geweke import LINEAR_GAMMA, GewekeProblem, log_ratio
from .hsncic import DEFAULT_LAMBDA, HsncicProblem, OperatorRegularizer, causality_blocks
from .infotheory import (
    HistogramSpec,
    histogram,
    mutual_information,
    te_samples,
    transfer_entropy_from_joint,
)
from .kernels import KernelKind, KernelSpec
from .panel import TimeSeriesPanel

GEWEKE_LINEAR = "geweke-linear"
GEWEKE_KERNEL = "geweke-kernel"
HSNCIC = "hsncic"
TRANSFER_ENTROPY = "transfer-entropy"
MUTUAL_INFORMATION = "mutual-information"
MEASURES = (GEWEKE_LINEAR, GEWEKE_KERNEL, HSNCIC, TRANSFER_ENTROPY, MUTUAL_INFORMATION)

KERNEL_GAMMA = 1e-3


@dataclass(frozen=True)
class CausalityQuery:
    """One directed test: does ``cause`` help predict ``target`` given ``side``?

    ``kernel``/``gamma`` apply to the Geweke measures, ``lam`` to HSNCIC and
    ``bins`` to the histogram measures. ``None`` picks the measure default.
    Lag 0 (``lags.include_present_y``) turns the Geweke measures into the
    instantaneous-coupling index.
    """

    target: str
    cause: tuple
    side: tuple = ()
    lags: LagSpec = field(default_factory=LagSpec)
    measure: str = GEWEKE_LINEAR
    kernel: Optional[KernelSpec] = None
    gamma: Optional[float] = None
    lam: float = DEFAULT_LAMBDA
    bins: HistogramSpec = field(default_factory=HistogramSpec)

    def __post_init__(self):
        cause = (self.cause,) if isinstance(self.cause, str) else tuple(self.cause)
        side = (self.side,) if isinstance(self.side, str) else tuple(self.side or ())
        object.__setattr__(self, "cause", cause)
        object.__setattr__(self, "side", side)
        if self.measure not in MEASURES:
            raise ConfigError(f"unknown measure {self.measure!r}; choose from {', '.join(MEASURES)}")
        if not cause:
            raise ConfigError("at least one cause column is required")
        names = (self.target,) + cause + side
        if len(set(names)) != len(names):
            raise ConfigError("target, cause and side columns must be distinct")
        m = self.measure
        if m in (TRANSFER_ENTROPY, MUTUAL_INFORMATION):
            if side:
                raise ConfigError(f"{m} is bivariate and does not accept side columns")
            if len(cause) != 1:
                raise ConfigError(f"{m} takes exactly one cause column")
        if m == TRANSFER_ENTROPY:
            if self.lags.include_present_y or len(self.lags.lags) != 1:
                raise ConfigError(
                    "transfer-entropy takes exactly one positive lag; use mutual-information for lag 0"
                )
        if m == MUTUAL_INFORMATION:
            object.__setattr__(self, "lags", LagSpec((), include_present_y=True))
        if m == HSNCIC and self.lags.include_present_y:
            raise ConfigError("hsncic does not test instantaneous coupling (lag 0)")
        if m == GEWEKE_LINEAR:
            if self.kernel is not None and self.kernel.kind is not KernelKind.LINEAR:
                raise ConfigError("geweke-linear uses the linear kernel")
        if self.gamma is not None and not self.gamma > 0:
            raise ConfigError("gamma must be positive")
        if not self.lam > 0:
            raise ConfigError("lam must be positive")

    @property
    def resolved_kernel(self) -> KernelSpec:
        if self.kernel is not None:
            return self.kernel
        if self.measure == GEWEKE_LINEAR:
            return KernelSpec.linear()
        if self.measure == GEWEKE_KERNEL:
            return KernelSpec.gaussian()
        return None

    @property
    def resolved_gamma(self) -> float:
        if self.gamma is not None:
            return self.gamma
        return LINEAR_GAMMA if self.measure == GEWEKE_LINEAR else KERNEL_GAMMA

    def reversed(self) -> "CausalityQuery":
        if len(self.cause) != 1:
            raise ConfigError("only single-cause queries can be reversed")
        return dataclasses.replace(self, target=self.cause[0], cause=(self.target,))

    def describe(self) -> dict:
        out = {
            "measure": self.measure,
            "target": self.target,
            "cause": list(self.cause),
            "side": list(self.side),
            "lags": list(self.lags.lags),
            "lag0": self.lags.include_present_y,
            "present_z": self.lags.include_present_z,
        }
        if self.measure in (GEWEKE_LINEAR, GEWEKE_KERNEL):
            k = self.resolved_kernel
            out.update(kernel=k.kind.value, sigma=k.sigma, gamma=self.resolved_gamma)
        elif self.measure == HSNCIC:
            out.update(lam=self.lam, kernel=self.kernel.kind.value if self.kernel else "gaussian",
                       sigma=self.kernel.sigma if self.kernel else None)
        else:
            out.update(bins=self.bins.bins_per_dim,
                       ranges=[list(r) for r in self.bins.ranges] if self.bins.ranges else None)
        return out


@dataclass
class BoundMeasure:
    """A query fixed to a panel; ``evaluate`` takes raw ``(n, k)`` cause values."""

    query: CausalityQuery
    cause_values: np.ndarray
    evaluate: Callable[[np.ndarray], float]
    resolved: dict

    def observed(self) -> float:
        return self.evaluate(self.cause_values)


def bind(query: CausalityQuery, panel: TimeSeriesPanel) -> BoundMeasure:
    x = panel.column(query.target)
    y = panel.array(list(query.cause))
    z = panel.array(list(query.side))
    resolved = query.describe()
    m = query.measure

    if m in (GEWEKE_LINEAR, GEWEKE_KERNEL):
        problem = GewekeProblem(x, y, z, query.lags, query.resolved_kernel, query.resolved_gamma)
        resolved.update(sigma=problem.kernel.sigma, restricted_var=problem.restricted_var)

        def evaluate(yv):
            return log_ratio(problem.restricted_var, problem.full_variance(yv))

    elif m == HSNCIC:
        x_block, _, z_block = causality_blocks(x, y, z, query.lags)
        problem = HsncicProblem(x_block, z_block, OperatorRegularizer(query.lam), query.kernel)
        resolved.update(sigma_xz=problem.kernel_xz.sigma,
                        sigma_z=problem.kernel_z.sigma if problem.kernel_z else None)

        def evaluate(yv):
            _, y_block, _ = causality_blocks(x, yv, z, query.lags)
            return problem.value(y_block).value

    elif m == TRANSFER_ENTROPY:
        lag = query.lags.lags[0]

        def evaluate(yv):
            return transfer_entropy_from_joint(histogram(te_samples(x, yv[:, 0], lag), query.bins))

    else:

        def evaluate(yv):
            return mutual_information(x, yv[:, 0], query.bins)

    return BoundMeasure(query, y, evaluate, resolved)


def compute(query: CausalityQuery, panel: TimeSeriesPanel) -> float:
    """Value of the measure on the unshuffled panel."""
    return bind(query, panel).observed()
