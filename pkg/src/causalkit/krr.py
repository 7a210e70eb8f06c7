"""Kernel ridge regression in dual form.

The dual weights solve ``(K + gamma * m * I) alpha = x`` where ``m`` is the
number of training rows, so ``gamma`` is the per-sample penalty of the
primal cost ``(1/m) sum (w^T beta - x)^2 + gamma beta^T beta``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import ConfigError, DimensionMismatch, SolveFailure
from .kernels import GramMatrix


@dataclass(frozen=True)
class RidgeFit:
    alpha: np.ndarray
    gamma: float
    gram: GramMatrix
    target: np.ndarray

    @property
    def m(self) -> int:
        return self.target.shape[0]

    @property
    def fitted(self) -> np.ndarray:
        return self.gram.values @ self.alpha


def solve_dual(K: np.ndarray, target: np.ndarray, gamma: float) -> np.ndarray:
    """Cholesky solve of the regularised system; raises ``SolveFailure``."""
    m = K.shape[0]
    A = K + (gamma * m) * np.eye(m)
    try:
        factor = linalg.cho_factor(A, lower=True, check_finite=False)
        alpha = linalg.cho_solve(factor, target, check_finite=False)
    except linalg.LinAlgError as exc:
        raise SolveFailure(
            f"K + gamma*m*I is not numerically positive definite (gamma={gamma:g}); "
            "gamma is too small for the data scale"
        ) from exc
    if not np.all(np.isfinite(alpha)):
        raise SolveFailure(f"non-finite dual weights (gamma={gamma:g})")
    return alpha


def fit(gram: GramMatrix, target, gamma: float) -> RidgeFit:
    target = np.asarray(target, dtype=float)
    K = gram.values
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise DimensionMismatch(f"Gram matrix must be square, got {K.shape}")
    if target.shape != (K.shape[0],):
        raise DimensionMismatch(f"target of shape {target.shape} for Gram of size {K.shape[0]}")
    if not gamma > 0:
        raise ConfigError(f"gamma must be positive, got {gamma}")
    return RidgeFit(solve_dual(K, target, gamma), float(gamma), gram, target)


def predict(fit: RidgeFit, cross_gram) -> np.ndarray:
    cross_gram = np.atleast_2d(np.asarray(cross_gram, dtype=float))
    if cross_gram.shape[1] != fit.m:
        raise DimensionMismatch(
            f"cross Gram has {cross_gram.shape[1]} columns, fit has {fit.m} training rows"
        )
    return cross_gram @ fit.alpha


def residual_variance(fit: RidgeFit) -> float:
    """In-sample mean squared residual ``(1/m) ||K alpha - x||^2``."""
    r = fit.fitted - fit.target
    return float(np.dot(r, r) / fit.m)


def ridge_residual_variance(K: np.ndarray, target: np.ndarray, gamma: float) -> float:
    """Shortcut for ``residual_variance(fit(GramMatrix(K), target, gamma))``.

    Uses the identity ``K alpha - x = -gamma m alpha`` for the residual.
    """
    m = target.shape[0]
    alpha = solve_dual(K, target, gamma)
    r = (gamma * m) * alpha
    return float(np.dot(r, r) / m)
