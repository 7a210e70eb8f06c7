"""Seeded generators for the two benchmark systems.

``linear``: eight correlated Gaussian white-noise series, some delayed so
that contemporaneous correlation becomes lagged causation.
``nonlinear``: the chain x -> y -> z with a quadratic x -> y link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError, NotPositiveDefinite
from .panel import TimeSeriesPanel

LINEAR_NAMES = tuple(f"ts{i}" for i in range(1, 9))

BENCHMARK_CORRELATION = np.array([
    [1.0, 0.7, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1],
    [0.7, 1.0, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1],
    [0.1, 0.1, 1.0, 0.7, 0.1, 0.1, 0.1, 0.1],
    [0.1, 0.1, 0.7, 1.0, 0.1, 0.1, 0.1, 0.1],
    [0.1, 0.1, 0.1, 0.1, 1.0, 0.7, 0.7, 0.7],
    [0.1, 0.1, 0.1, 0.1, 0.7, 1.0, 0.7, 0.7],
    [0.1, 0.1, 0.1, 0.1, 0.7, 0.7, 1.0, 0.7],
    [0.1, 0.1, 0.1, 0.1, 0.7, 0.7, 0.7, 1.0],
])

# Entry [row][col] = k means "col causes row at lag k" (0: instantaneous);
# the mirrored entry carries -k. None: no relation.
_ = None
BENCHMARK_LAGS = (
    (_, 0, _, _, _, _, _, _),
    (0, _, _, _, _, _, _, _),
    (_, _, _, -1, _, _, _, _),
    (_, _, 1, _, _, _, _, _),
    (_, _, _, _, _, -1, -2, -3),
    (_, _, _, _, 1, _, -1, -2),
    (_, _, _, _, 2, 1, _, -1),
    (_, _, _, _, 3, 2, 1, _),
)
del _

# (cause, target, lag) for every true lagged relation.
TRUE_CAUSES = (
    ("ts3", "ts4", 1),
    ("ts5", "ts6", 1),
    ("ts5", "ts7", 2),
    ("ts5", "ts8", 3),
    ("ts6", "ts7", 1),
    ("ts6", "ts8", 2),
    ("ts7", "ts8", 1),
)


def delays_from_lag_map(lag_map) -> np.ndarray:
    """Per-column delays realising a lag map.

    Delaying column ``r`` by ``s_r`` steps relative to ``c`` makes ``c``
    lead ``r`` by ``s_r - s_c``; solve ``s_r - s_c = lag_map[r][c]`` with
    the smallest delay in each connected group pinned at zero.
    """
    k = len(lag_map)
    delays: list[Optional[int]] = [None] * k
    for root in range(k):
        if delays[root] is not None:
            continue
        delays[root] = 0
        stack = [root]
        while stack:
            r = stack.pop()
            for c in range(k):
                lag = lag_map[r][c]
                if lag is None or r == c:
                    continue
                if lag_map[c][r] is None or lag_map[c][r] != -lag:
                    raise ConfigError(f"lag map is not antisymmetric at ({r}, {c})")
                want = delays[r] - lag
                if delays[c] is None:
                    delays[c] = want
                    stack.append(c)
                elif delays[c] != want:
                    raise ConfigError(f"inconsistent lag map around ({r}, {c})")
    out = np.array(delays)
    # shift every connected group so its smallest delay is zero
    groups = _components(lag_map)
    for g in groups:
        out[g] -= out[g].min()
    return out


def _components(lag_map):
    k = len(lag_map)
    seen, groups = set(), []
    for root in range(k):
        if root in seen:
            continue
        group, stack = [], [root]
        seen.add(root)
        while stack:
            r = stack.pop()
            group.append(r)
            for c in range(k):
                if lag_map[r][c] is not None and c not in seen:
                    seen.add(c)
                    stack.append(c)
        groups.append(sorted(group))
    return groups


def symmetric_sqrt(corr: np.ndarray) -> np.ndarray:
    corr = np.asarray(corr, dtype=float)
    if not np.allclose(corr, corr.T, atol=1e-12) or not np.allclose(np.diag(corr), 1.0):
        raise NotPositiveDefinite("correlation matrix must be symmetric with unit diagonal")
    w, V = np.linalg.eigh(corr)
    if np.min(w) <= 0:
        raise NotPositiveDefinite(f"correlation matrix has eigenvalue {np.min(w):.3g}")
    return (V * np.sqrt(w)) @ V.T


@dataclass(frozen=True)
class LinearBenchmarkSpec:
    length: int = 250
    correlation: np.ndarray = field(default_factory=lambda: BENCHMARK_CORRELATION.copy())
    lag_map: tuple = BENCHMARK_LAGS
    seed: int = 0
    names: tuple = LINEAR_NAMES


def generate_linear_benchmark(spec: LinearBenchmarkSpec = LinearBenchmarkSpec()) -> TimeSeriesPanel:
    root = symmetric_sqrt(spec.correlation)
    delays = delays_from_lag_map(spec.lag_map)
    k = root.shape[0]
    if len(spec.names) != k or delays.size != k:
        raise ConfigError("names, correlation and lag map disagree on the number of series")
    extra = int(delays.max())
    rng = np.random.default_rng(spec.seed)
    g = rng.standard_normal((spec.length + extra, k)) @ root
    # column c at time t is the draw from time t - delay_c
    cols = {}
    for c, name in enumerate(spec.names):
        start = extra - int(delays[c])
        cols[name] = g[start:start + spec.length, c]
    return TimeSeriesPanel(cols)


@dataclass(frozen=True)
class NonlinearBenchmarkSpec:
    length: int = 500
    a: float = 0.2
    b: float = 0.5
    c: float = 0.8
    d: float = 0.8
    e: float = 0.7
    noise_std: float = 1.0
    seed: int = 0
    burn_in: int = 100

    def __post_init__(self):
        if not (abs(self.a) < 1 and abs(self.b) < 1 and abs(self.c) < 1):
            raise ConfigError("autoregressive coefficients a, b, c must lie in (-1, 1)")


def generate_nonlinear_benchmark(spec: NonlinearBenchmarkSpec = NonlinearBenchmarkSpec()) -> TimeSeriesPanel:
    """x_t = a x + e_x;  y_t = b y + d x^2 + e_y;  z_t = c z + e y + e_z (all at t-1)."""
    total = spec.length + spec.burn_in
    eps = np.random.default_rng(spec.seed).standard_normal((total, 3)) * spec.noise_std
    x = np.zeros(total)
    y = np.zeros(total)
    z = np.zeros(total)
    for t in range(total):
        xp, yp, zp = (x[t - 1], y[t - 1], z[t - 1]) if t else (0.0, 0.0, 0.0)
        x[t] = spec.a * xp + eps[t, 0]
        y[t] = spec.b * yp + spec.d * xp * xp + eps[t, 1]
        z[t] = spec.c * zp + spec.e * yp + eps[t, 2]
    keep = slice(spec.burn_in, total)
    return TimeSeriesPanel({"x": x[keep], "y": y[keep], "z": z[keep]})


def regime_switch_pair(length: int = 1000, switch: Optional[int] = None, coupling: float = 0.6,
                       ar: float = 0.3, seed: int = 0) -> TimeSeriesPanel:
    """Pair where ``cause`` drives ``effect`` at lag 1 only before ``switch``."""
    switch = length // 2 if switch is None else switch
    rng = np.random.default_rng(seed)
    cause = rng.standard_normal(length)
    noise = rng.standard_normal(length)
    effect = np.zeros(length)
    for t in range(1, length):
        c = coupling if t < switch else 0.0
        effect[t] = ar * effect[t - 1] + c * cause[t - 1] + noise[t]
    return TimeSeriesPanel({"cause": cause, "effect": effect})
