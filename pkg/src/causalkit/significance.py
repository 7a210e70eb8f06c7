"""Permutation tests, rolling-window scans and pairwise p-value matrices.

Surrogates shuffle the raw cause column(s) before lag embedding. Each
permutation draws from its own generator seeded by ``(seed, j)``, so a test
is reproducible regardless of evaluation order or thread count.
"""

from __future__ import annotations

import dataclasses
import hashlib
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .embedding import LagSpec
from .errors import ConfigError, WindowTooLong
from .measures import CausalityQuery, bind
from .panel import TimeSeriesPanel, window

logger = logging.getLogger(__name__)

THREADS_ENV = "CAUSALKIT_THREADS"


def thread_count(threads: Optional[int] = None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def derive_seed(seed: int, *keys) -> int:
    """Child seed from a master seed and integer or string keys."""
    words = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for k in keys:
        if isinstance(k, str):
            k = int.from_bytes(hashlib.sha256(k.encode()).digest()[:8], "little")
        words.append(int(k))
    return int(np.random.SeedSequence(words).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class PermutationPlan:
    n_r: int = 200
    seed: int = 0

    def __post_init__(self):
        if int(self.n_r) < 1:
            raise ConfigError("need at least one permutation")

    def permutation(self, j: int, n: int) -> np.ndarray:
        return np.random.default_rng(np.random.SeedSequence([int(self.seed), int(j)])).permutation(n)


@dataclass(frozen=True)
class WindowPlan:
    window_length: int
    step: int

    def __post_init__(self):
        if self.window_length < 1 or self.step < 1:
            raise ConfigError("window length and step must be positive")

    def starts(self, length: int) -> list[int]:
        if length < self.window_length:
            raise WindowTooLong(
                f"window of {self.window_length} rows exceeds panel length {length}"
            )
        return list(range(0, length - self.window_length + 1, self.step))


@dataclass(frozen=True)
class MeasureResult:
    observed: float
    surrogates: np.ndarray
    p_value: float
    plan: PermutationPlan
    resolved: dict = dataclasses.field(default_factory=dict)


def p_value(observed: float, surrogates) -> float:
    """Fraction of surrogates strictly greater than the observed value."""
    s = np.asarray(surrogates, dtype=float)
    return float(np.count_nonzero(s > observed)) / s.size


def permutation_test(query: CausalityQuery, panel: TimeSeriesPanel, plan: PermutationPlan,
                     threads: Optional[int] = None) -> MeasureResult:
    bound = bind(query, panel)
    observed = bound.observed()
    y = bound.cause_values
    n = y.shape[0]

    def surrogate(j):
        return bound.evaluate(y[plan.permutation(j, n)])

    jobs = range(1, plan.n_r + 1)
    workers = thread_count(threads)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(surrogate, jobs))
    else:
        values = [surrogate(j) for j in jobs]
    surrogates = np.array(values, dtype=float)
    return MeasureResult(observed, surrogates, p_value(observed, surrogates), plan, bound.resolved)


def rolling_scan(query: CausalityQuery, panel: TimeSeriesPanel, wplan: Optional[WindowPlan],
                 pplan: PermutationPlan, threads: Optional[int] = None) -> list:
    """Independent permutation tests on sliding windows.

    Returns ``[(start, MeasureResult), ...]``. ``wplan=None`` is one window
    spanning the whole panel. Window ``i`` uses seed ``derive_seed(seed, i)``.
    """
    if wplan is None:
        wplan = WindowPlan(len(panel), len(panel))
    out = []
    for i, start in enumerate(wplan.starts(len(panel))):
        sub = window(panel, start, wplan.window_length)
        plan = PermutationPlan(pplan.n_r, derive_seed(pplan.seed, i))
        out.append((start, permutation_test(query, sub, plan, threads)))
        logger.debug("window %d at %d: p=%.3f", i, start, out[-1][1].p_value)
    return out


def pair_plan(pplan: PermutationPlan, target: str, cause: str) -> PermutationPlan:
    """Per-pair plan keyed by column names, so relabeling permutes results."""
    return PermutationPlan(pplan.n_r, derive_seed(pplan.seed, target, cause))


def pvalue_matrix(panel: TimeSeriesPanel, columns: Sequence[str], lags: LagSpec, measure: str,
                  pplan: PermutationPlan, threads: Optional[int] = None, **query_options):
    """P-values for every ordered pair; entry ``(i, j)`` tests ``columns[j] -> columns[i]``.

    The diagonal is NaN. Returns ``(pvalues, values)``.
    """
    columns = list(columns)
    if len(columns) < 2:
        raise ConfigError("a p-value matrix needs at least two columns")
    k = len(columns)
    pvals = np.full((k, k), np.nan)
    values = np.full((k, k), np.nan)
    for i, tgt in enumerate(columns):
        for j, cause in enumerate(columns):
            if i == j:
                continue
            q = CausalityQuery(tgt, (cause,), (), lags, measure, **query_options)
            res = permutation_test(q, panel, pair_plan(pplan, tgt, cause), threads)
            pvals[i, j] = res.p_value
            values[i, j] = res.observed
    return pvals, values
