"""Randomised k-fold cross-validation of (gamma, sigma) for kernel ridge."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .embedding import LagDesign
from .errors import ConfigError, TooFewRows
from .kernels import KernelKind, KernelSpec, cross_gram


def dyadic(lo: int, hi: int) -> tuple:
    return tuple(2.0**k for k in range(lo, hi + 1))


@dataclass(frozen=True)
class CvGrid:
    gammas: tuple = field(default_factory=lambda: dyadic(-40, -26))
    sigmas: tuple = field(default_factory=lambda: dyadic(7, 13))
    folds: int = 5
    seed: int = 0

    def __post_init__(self):
        for name in ("gammas", "sigmas"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not vals or any(not v > 0 for v in vals) or list(vals) != sorted(vals):
                raise ConfigError(f"{name} must be a non-empty ascending list of positive values")
            object.__setattr__(self, name, vals)
        if self.folds < 2:
            raise ConfigError("cross-validation needs at least two folds")


@dataclass(frozen=True)
class CvReport:
    best_gamma: float
    best_sigma: float
    score_surface: np.ndarray
    fold_assignment: np.ndarray
    folds: tuple

    def kernel(self, kind: KernelKind) -> KernelSpec:
        kind = KernelKind(kind)
        if kind is KernelKind.LINEAR:
            return KernelSpec.linear()
        return KernelSpec.gaussian(self.best_sigma)


def fold_split(m: int, folds: int, seed: int):
    """Seeded shuffle of ``range(m)`` cut into near-equal folds (sizes differ by <= 1)."""
    order = np.random.default_rng(np.random.SeedSequence([int(seed), 0xCF])).permutation(m)
    return order, tuple(np.array_split(order, folds))


def select_best(surface: np.ndarray) -> tuple:
    """Index of the minimal score, ties going to larger gamma then larger sigma."""
    best = np.min(surface)
    hits = np.argwhere(surface == best)
    i, j = max(map(tuple, hits))
    return int(i), int(j)


def _fold_scores(K: np.ndarray, target: np.ndarray, train, val, gammas) -> np.ndarray:
    Ktr = K[np.ix_(train, train)]
    Kval = K[np.ix_(val, train)]
    xtr = target[train]
    xval = target[val]
    mtr = train.size
    w, V = np.linalg.eigh(0.5 * (Ktr + Ktr.T))
    proj = V.T @ xtr
    KV = Kval @ V
    scores = np.empty(len(gammas))
    for g, gamma in enumerate(gammas):
        denom = w + gamma * mtr
        if np.min(denom) <= 1e-14 * max(1.0, np.max(np.abs(w))):
            scores[g] = np.inf
            continue
        pred = KV @ (proj / denom)
        r = pred - xval
        s = float(np.dot(r, r) / xval.size)
        scores[g] = s if np.isfinite(s) else np.inf
    return scores


def cross_validate(design: LagDesign, kind: KernelKind, grid: CvGrid = CvGrid()) -> CvReport:
    """Grid search by mean validation-fold squared error.

    The full Gram over all rows is computed once per width; each fold's
    train block is eigendecomposed once and reused across the gamma sweep.
    Ill-conditioned grid points score ``+inf`` instead of aborting.
    """
    kind = KernelKind(kind)
    m = design.m
    if m < grid.folds:
        raise TooFewRows(f"{m} rows cannot be split into {grid.folds} folds")
    order, folds = fold_split(m, grid.folds, grid.seed)
    sigmas = grid.sigmas if kind is KernelKind.GAUSSIAN else (np.nan,)
    surface = np.zeros((len(grid.gammas), len(sigmas)))
    for j, sigma in enumerate(sigmas):
        spec = KernelSpec(kind, None if kind is KernelKind.LINEAR else sigma)
        K = cross_gram(spec, design.design, design.design)
        for k, val in enumerate(folds):
            train = np.concatenate([f for i, f in enumerate(folds) if i != k])
            surface[:, j] += _fold_scores(K, design.target, train, val, grid.gammas)
    surface /= grid.folds
    surface[~np.isfinite(surface)] = np.inf
    i, j = select_best(surface)
    return CvReport(grid.gammas[i], float(sigmas[j]), surface, order, folds)
