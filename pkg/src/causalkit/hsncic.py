"""HSIC and the normalised conditional independence criterion (HSNCIC).

With centred Gram matrices ``K_U`` and ``R_U = K_U (K_U + n lam I)^-1`` the
estimator is

    Tr[R_XZ R_YZ - 2 R_XZ R_YZ R_Z + R_XZ R_Z R_YZ R_Z]

where ``XZ`` and ``YZ`` are the row-wise concatenations. Because the ``R``
matrices are symmetric this equals ``Tr[R_YZ (I - R_Z) R_XZ (I - R_Z)]``,
which lets permutation tests of ``Y`` reuse everything but ``R_YZ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .embedding import LagSpec, ModelVariant, design_blocks
from .errors import AllPointsIdentical, ConfigError, DimensionMismatch, SolveFailure
from .kernels import KernelSpec, center_values, gram, median_heuristic
from .panel import TimeSeriesPanel

DEFAULT_LAMBDA = 1e-3


@dataclass(frozen=True)
class OperatorRegularizer:
    lam: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if not self.lam > 0:
            raise ConfigError(f"operator regulariser must be positive, got {self.lam}")


@dataclass(frozen=True)
class HsncicValue:
    value: float
    n: int
    lam: float
    sigma_xz: Optional[float]
    sigma_yz: Optional[float]
    sigma_z: Optional[float]


def _rows(a, n=None) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    if n is not None and a.shape[0] != n:
        raise DimensionMismatch(f"expected {n} rows, got {a.shape[0]}")
    return a


def block_kernel(rows, kernel: Optional[KernelSpec]) -> KernelSpec:
    """Kernel for one variable block.

    ``None`` means Gaussian with the median heuristic on the block's rows.
    A block whose rows are all identical has a zero centred Gram for any
    width, so it falls back to ``sigma = 1``.
    """
    if kernel is None:
        kernel = KernelSpec.gaussian()
    if kernel.resolved:
        return kernel
    try:
        return kernel.with_sigma(median_heuristic(rows))
    except AllPointsIdentical:
        return kernel.with_sigma(1.0)


def centered_gram(rows, kernel: KernelSpec) -> np.ndarray:
    return center_values(gram(kernel, rows).values)


def shrinkage(K: np.ndarray, lam: float) -> np.ndarray:
    """``K (K + n lam I)^-1`` for a centred Gram ``K`` via its eigenbasis."""
    n = K.shape[0]
    try:
        w, V = np.linalg.eigh(K)
    except np.linalg.LinAlgError as exc:
        raise SolveFailure("eigendecomposition of the centred Gram failed") from exc
    w = np.clip(w, 0.0, None)
    f = w / (w + n * lam)
    R = (V * f) @ V.T
    return 0.5 * (R + R.T)


def hsic(x_rows, y_rows, kernel: Optional[KernelSpec] = None) -> float:
    """Biased (V-statistic) HSIC: ``Tr(Kx~ Ky~) / n^2`` with centred Grams."""
    x = _rows(x_rows)
    y = _rows(y_rows, x.shape[0])
    n = x.shape[0]
    if n < 2:
        raise DimensionMismatch("HSIC needs at least two samples")
    kx = centered_gram(x, block_kernel(x, kernel))
    ky = centered_gram(y, block_kernel(y, kernel))
    return float(np.sum(kx * ky) / (n * n))


class HsncicProblem:
    """Pre-computes the parts of the estimator that do not involve ``Y``."""

    def __init__(self, x_rows, z_rows, reg: OperatorRegularizer = OperatorRegularizer(),
                 kernel: Optional[KernelSpec] = None):
        self.x = _rows(x_rows)
        self.n = self.x.shape[0]
        if self.n < 2:
            raise DimensionMismatch("HSNCIC needs at least two samples")
        self.z = _rows(z_rows, self.n) if z_rows is not None else np.empty((self.n, 0))
        self.reg = reg
        self.kernel = kernel
        self.conditional = self.z.shape[1] > 0
        xz = np.hstack([self.x, self.z])
        self.kernel_xz = block_kernel(xz, kernel)
        r_xz = shrinkage(centered_gram(xz, self.kernel_xz), reg.lam)
        if self.conditional:
            self.kernel_z = block_kernel(self.z, kernel)
            r_z = shrinkage(centered_gram(self.z, self.kernel_z), reg.lam)
            proj = np.eye(self.n) - r_z
            self._m = proj @ r_xz @ proj
        else:
            self.kernel_z = None
            self._m = r_xz

    def value(self, y_rows) -> HsncicValue:
        y = _rows(y_rows, self.n)
        yz = np.hstack([y, self.z])
        kernel_yz = block_kernel(yz, self.kernel)
        r_yz = shrinkage(centered_gram(yz, kernel_yz), self.reg.lam)
        val = float(np.sum(r_yz * self._m.T))
        return HsncicValue(
            val, self.n, self.reg.lam,
            self.kernel_xz.sigma, kernel_yz.sigma,
            self.kernel_z.sigma if self.kernel_z else None,
        )


def hsncic(x_rows, y_rows, z_rows, reg: OperatorRegularizer = OperatorRegularizer(),
           kernel: Optional[KernelSpec] = None) -> HsncicValue:
    """Empirical HSNCIC of ``X`` and ``Y`` given ``Z``.

    With an empty ``Z`` block the criterion degenerates to ``Tr[R_X R_Y]``.
    """
    x = _rows(x_rows)
    y = _rows(y_rows, x.shape[0])
    z = None if z_rows is None else _rows(z_rows, x.shape[0])
    return HsncicProblem(x, z, reg, kernel).value(y)


def causality_blocks(x, y, z, spec: LagSpec):
    """Map ``y -> x || z`` onto criterion blocks.

    X is the target's present value, Y the lagged cause block, Z the
    target's own lags plus lagged side columns.
    """
    n = np.asarray(x).shape[0]
    y = np.asarray(y, dtype=float).reshape(n, -1)
    z = np.asarray(z, dtype=float).reshape(n, -1)
    target, own, _, _ = design_blocks(x, y, z, spec, ModelVariant.X_AND_Z if z.shape[1] else ModelVariant.X_ONLY)
    p = spec.max_lag
    times = np.arange(p, n)
    y_block = np.hstack([y[times - k] for k in spec.lags])
    return target, y_block, own


def hsncic_causality(
    panel: TimeSeriesPanel,
    target: str,
    cause: Sequence[str],
    side: Sequence[str] = (),
    spec: LagSpec = LagSpec(),
    reg: OperatorRegularizer = OperatorRegularizer(),
    kernel: Optional[KernelSpec] = None,
) -> HsncicValue:
    cause = [cause] if isinstance(cause, str) else list(cause)
    side = [side] if isinstance(side, str) else list(side or [])
    if not spec.lags:
        raise ConfigError("HSNCIC causality needs at least one positive lag")
    x_block, y_block, z_block = causality_blocks(
        panel.column(target), panel.array(cause), panel.array(side), spec
    )
    return hsncic(x_block, y_block, z_block if z_block.shape[1] else None, reg, kernel)
