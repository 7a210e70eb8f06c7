import math

import numpy as np
import pytest

from causalkit import KernelSpec, LagSpec, TimeSeriesPanel, geweke_causality, geweke_instantaneous
from causalkit.errors import DegenerateVariance
from causalkit.geweke import GewekeProblem, log_ratio, nested_variants


def ols_log_ratio(x, y, lags):
    """Two-model OLS log variance ratio via the normal equations, no intercept."""
    p = max(lags)
    t = np.arange(p, len(x))
    restricted = np.column_stack([x[t - k] for k in lags])
    full = np.column_stack([restricted] + [y[t - k] for k in lags])
    target = x[t]

    def var(W):
        beta = np.linalg.solve(W.T @ W, W.T @ target)
        r = target - W @ beta
        return float(r @ r) / len(t)

    return math.log(var(restricted) / var(full))


def coupled_pair(rng, n, coupling=0.5):
    y = rng.standard_normal(n)
    x = np.zeros(n)
    for t in range(1, n):
        x[t] = 0.4 * x[t - 1] + coupling * y[t - 1] + rng.standard_normal()
    return x, y


def test_log_ratio_examples():
    assert log_ratio(2.0, 2.0) == 0.0
    assert log_ratio(math.e, 1.0) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DegenerateVariance):
        log_ratio(1.0, 0.0)


def test_nested_variants():
    restricted, full = nested_variants(False)
    assert not restricted.uses_y and full.uses_y
    restricted, full = nested_variants(True)
    assert restricted.uses_z and full.uses_z and full.uses_y


@pytest.mark.parametrize("seed", range(5))
def test_ols_oracle_small(seed):
    rng = np.random.default_rng(seed)
    x, y = coupled_pair(rng, 30)
    panel = TimeSeriesPanel({"x": x, "y": y})
    g = geweke_causality(panel, "x", ["y"], spec=LagSpec((1,)), kernel=KernelSpec.linear(), gamma=1e-6)
    assert g.value == pytest.approx(ols_log_ratio(x, y, (1,)), abs=1e-4)


def test_value_is_log_of_variances(rng):
    x, y = coupled_pair(rng, 80)
    g = geweke_causality(TimeSeriesPanel({"x": x, "y": y}), "x", ["y"], spec=LagSpec.upto(2))
    assert g.value == pytest.approx(math.log(g.restricted_var / g.full_var), abs=1e-12)
    assert g.value > 0


def test_linear_index_nonnegative(rng):
    # nested least squares: adding regressors cannot raise the residual
    for _ in range(10):
        x, y = rng.standard_normal(60), rng.standard_normal(60)
        g = geweke_causality(TimeSeriesPanel({"x": x, "y": y}), "x", ["y"], spec=LagSpec.upto(2))
        assert g.value >= -1e-9


@pytest.mark.parametrize("c", [1e-3, 7.0, 1e4])
def test_scale_robustness(c, rng):
    x, y = coupled_pair(rng, 100)
    spec = LagSpec.upto(2)
    base = geweke_causality(TimeSeriesPanel({"x": x, "y": y}), "x", ["y"], spec=spec,
                            kernel=KernelSpec.gaussian(1.5), gamma=1e-3).value
    scaled = geweke_causality(TimeSeriesPanel({"x": c * x, "y": c * y}), "x", ["y"], spec=spec,
                              kernel=KernelSpec.gaussian(1.5 * c), gamma=1e-3).value
    assert scaled == pytest.approx(base, abs=1e-9)


def test_side_columns_nested(rng):
    x, y = coupled_pair(rng, 120)
    z = rng.standard_normal(120)
    g = geweke_causality(TimeSeriesPanel({"x": x, "y": y, "z": z}), "x", ["y"], ["z"])
    assert g.variant_pair[0].uses_z and not g.variant_pair[0].uses_y
    assert g.value > 0


def test_gaussian_sigma_shared_and_resolved(rng):
    x, y = coupled_pair(rng, 60)
    g = geweke_causality(TimeSeriesPanel({"x": x, "y": y}), "x", ["y"],
                         kernel=KernelSpec.gaussian(), gamma=1e-3)
    assert g.kernel.sigma is not None and g.kernel.sigma > 0
    assert np.isfinite(g.value)


def test_problem_restricted_independent_of_cause(rng):
    x, y = coupled_pair(rng, 50)
    prob = GewekeProblem(x, y[:, None], np.empty((50, 0)), LagSpec.upto(2), KernelSpec.linear(), 1e-8)
    shuffled = y[rng.permutation(50)][:, None]
    assert prob.index(shuffled).restricted_var == prob.index(y[:, None]).restricted_var


def test_instantaneous_detects_contemporaneous(rng):
    y = rng.standard_normal(200)
    x = 0.7 * y + 0.7 * rng.standard_normal(200)
    panel = TimeSeriesPanel({"x": x, "y": y})
    inst = geweke_instantaneous(panel, "x", ["y"])
    lagged = geweke_causality(panel, "x", ["y"])
    assert inst.value > 0.3
    assert abs(lagged.value) < 0.05


def test_independent_near_zero(rng):
    panel = TimeSeriesPanel({"x": rng.standard_normal(300), "y": rng.standard_normal(300)})
    assert abs(geweke_causality(panel, "x", ["y"], spec=LagSpec.upto(2)).value) < 0.05
    assert abs(geweke_instantaneous(panel, "x", ["y"]).value) < 0.05
