import numpy as np
import pytest

from causalkit import CausalityQuery, LagSpec, PermutationPlan, TimeSeriesPanel, WindowPlan
from causalkit import permutation_test, pvalue_matrix, rolling_scan
from causalkit.errors import ConfigError, WindowTooLong
from causalkit.significance import derive_seed, p_value


def driven_panel(rng, n=120):
    y = rng.standard_normal(n)
    x = np.zeros(n)
    for t in range(1, n):
        x[t] = 0.3 * x[t - 1] + 0.8 * y[t - 1] + 0.5 * rng.standard_normal()
    return TimeSeriesPanel({"x": x, "y": y, "w": rng.standard_normal(n)})


def test_p_value_examples():
    assert p_value(5.0, [1.0, 2.0, 3.0]) == 0.0
    assert p_value(0.0, [1.0, 2.0, 3.0]) == 1.0
    assert p_value(2.0, [1.0, 3.0, 4.0, 2.0]) == 0.5
    # ties do not count as exceeding
    assert p_value(2.0, [2.0, 2.0]) == 0.0


def test_plan_validation():
    with pytest.raises(ConfigError):
        PermutationPlan(0)
    with pytest.raises(ConfigError):
        WindowPlan(0, 1)


def test_permutations_seeded_and_distinct():
    plan = PermutationPlan(10, seed=3)
    a = plan.permutation(1, 50)
    np.testing.assert_array_equal(a, plan.permutation(1, 50))
    assert not np.array_equal(a, plan.permutation(2, 50))
    np.testing.assert_array_equal(np.sort(a), np.arange(50))


@pytest.mark.parametrize("measure", ["geweke-linear", "transfer-entropy", "hsncic"])
def test_lattice_and_detection(measure, rng):
    panel = driven_panel(rng)
    res = permutation_test(CausalityQuery("x", "y", measure=measure), panel, PermutationPlan(20, 1))
    assert res.surrogates.shape == (20,)
    assert res.p_value * 20 == pytest.approx(round(res.p_value * 20))
    assert res.p_value == 0.0


def test_determinism_and_thread_invariance(rng):
    panel = driven_panel(rng)
    q = CausalityQuery("x", "w", measure="geweke-kernel")
    plan = PermutationPlan(12, 5)
    a = permutation_test(q, panel, plan, threads=1)
    b = permutation_test(q, panel, plan, threads=1)
    c = permutation_test(q, panel, plan, threads=3)
    np.testing.assert_array_equal(a.surrogates, b.surrogates)
    np.testing.assert_array_equal(a.surrogates, c.surrogates)
    assert a.p_value == c.p_value
    assert a.resolved["sigma"] > 0


def test_env_thread_override(monkeypatch, rng):
    panel = driven_panel(rng)
    q = CausalityQuery("x", "w")
    base = permutation_test(q, panel, PermutationPlan(8, 2))
    monkeypatch.setenv("CAUSALKIT_THREADS", "4")
    again = permutation_test(q, panel, PermutationPlan(8, 2))
    np.testing.assert_array_equal(base.surrogates, again.surrogates)


@pytest.mark.parametrize("length,wl,step,starts", [
    (250, 250, 7, [0]),
    (300, 250, 25, [0, 25, 50]),
    (500, 250, 25, list(range(0, 251, 25))),
])
def test_window_starts(length, wl, step, starts):
    assert WindowPlan(wl, step).starts(length) == starts


def test_window_too_long():
    with pytest.raises(WindowTooLong):
        WindowPlan(300, 10).starts(200)


def test_rolling_scan_seeds_per_window(rng):
    panel = driven_panel(rng, 90)
    q = CausalityQuery("x", "w")
    out = rolling_scan(q, panel, WindowPlan(60, 15), PermutationPlan(5, 9))
    assert [s for s, _ in out] == [0, 15, 30]
    assert out[1][1].plan.seed == derive_seed(9, 1)
    single = rolling_scan(q, panel, None, PermutationPlan(5, 9))
    assert len(single) == 1 and single[0][0] == 0


def test_derive_seed():
    assert derive_seed(1, 2) == derive_seed(1, 2)
    assert derive_seed(1, 2) != derive_seed(1, 3)
    assert derive_seed(1, "a", "b") != derive_seed(1, "b", "a")


def test_pvalue_matrix_shape_and_relabeling(rng):
    panel = driven_panel(rng, 80)
    cols = ["x", "y", "w"]
    p, v = pvalue_matrix(panel, cols, LagSpec(), "geweke-linear", PermutationPlan(10, 4))
    assert p.shape == (3, 3) and np.all(np.isnan(np.diag(p)))
    assert p[0, 1] == 0.0
    order = [2, 0, 1]
    p2, v2 = pvalue_matrix(panel, [cols[i] for i in order], LagSpec(), "geweke-linear", PermutationPlan(10, 4))
    np.testing.assert_array_equal(p2, p[np.ix_(order, order)])
    np.testing.assert_array_equal(v2, v[np.ix_(order, order)])


def test_pvalue_matrix_two_columns(rng):
    panel = driven_panel(rng, 50)
    p, _ = pvalue_matrix(panel, ["x", "y"], LagSpec(), "transfer-entropy", PermutationPlan(5))
    assert np.count_nonzero(~np.isnan(p)) == 2
    with pytest.raises(ConfigError):
        pvalue_matrix(panel, ["x"], LagSpec(), "transfer-entropy", PermutationPlan(5))


def test_null_pvalues_spread(rng):
    ps = []
    for s in range(40):
        r = np.random.default_rng(s)
        panel = TimeSeriesPanel({"x": r.standard_normal(60), "y": r.standard_normal(60)})
        ps.append(permutation_test(CausalityQuery("x", "y"), panel, PermutationPlan(20, s)).p_value)
    assert 0.3 < np.mean(ps) < 0.7
