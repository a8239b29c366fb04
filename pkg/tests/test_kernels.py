"""The numba loop kernels and the batched numpy kernels must agree."""

import numpy as np
import pytest

from metric_sensing import MetricParams, gospa2, ospa, uospa
from metric_sensing import _kernels_nb as nb
from metric_sensing import _kernels_np as npk


def test_uniform_streams_identical_across_backends():
    trials = np.arange(0, 500)
    table = npk.uniforms(12345, trials, 3)
    for t in (0, 1, 17, 499):
        for i in range(3):
            for lane in range(2):
                assert nb.uniform(np.uint64(12345), t, i, lane) == table[t, i, lane]
    assert table.min() >= 0.0 and table.max() < 1.0


def test_uniform_streams_look_uniform():
    u = npk.uniforms(7, np.arange(200_000), 1)[:, 0, 0]
    assert abs(u.mean() - 0.5) < 0.005
    assert abs(u.var() - 1 / 12) < 0.002
    # neighbouring trials and lanes are not correlated
    assert abs(np.corrcoef(u[:-1], u[1:])[0, 1]) < 0.01
    lanes = npk.uniforms(7, np.arange(50_000), 2).reshape(50_000, -1)
    assert np.abs(np.corrcoef(lanes.T) - np.eye(4)).max() < 0.02


@pytest.mark.parametrize("shape", [(1, 1), (3, 3), (2, 5), (5, 2), (6, 6)])
def test_hungarian_matches_scipy(shape):
    rng = np.random.default_rng(sum(shape))
    for _ in range(50):
        cost = rng.uniform(0, 10, size=shape)
        r1, c1 = nb.assign(cost)
        r2, c2 = npk.assign(cost)
        assert cost[r1, c1].sum() == pytest.approx(cost[r2, c2].sum(), rel=1e-12)
        assert len(set(r1)) == len(r1) == min(shape)
        assert len(set(c1)) == len(c1)


@pytest.mark.parametrize("code, fn", [(0, None), (1, ospa), (2, uospa)])
def test_numba_metric_pow_matches_public_metrics(code, fn):
    rng = np.random.default_rng(code)
    for _ in range(100):
        X = rng.uniform(-10, 10, size=(rng.integers(0, 5), 2))
        Y = rng.uniform(-10, 10, size=(rng.integers(0, 5), 2))
        c, p = 4.0, float(rng.choice([1.0, 2.0]))
        params = MetricParams(c, p)
        expected = gospa2(X, Y, params).total ** p if fn is None else fn(X, Y, params) ** p
        assert nb.metric_pow(X, Y, c, p, code) == pytest.approx(expected, rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("metric", [0, 1, 2])
def test_action_errors_agree(metric):
    rng = np.random.default_rng(metric)
    for n in range(1, 5):
        r = rng.uniform(size=n)
        r[rng.uniform(size=n) < 0.2] = 1.0
        pd = float(rng.choice([0.0, 0.4, 1.0]))
        np.testing.assert_allclose(
            nb.action_errors(r, pd, 10.0, metric), npk.action_errors(r, pd, 10.0, metric), atol=1e-10
        )


@pytest.mark.parametrize("metric", [0, 1, 2])
def test_mc_trials_identical_across_backends(metric):
    r = np.array([0.6, 0.3, 0.9])
    action = np.array([1, 0, 1])
    a = nb.mc_trial_errors(r, 0.6, action, metric, 10.0, np.uint64(99), 40, 3000)
    b = npk.mc_trial_errors(r, 0.6, action, metric, 10.0, np.uint64(99), 40, 3000)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_pick_rules():
    values = np.array([3.0, 1.0, 1.0, 1.0])
    for mod in (nb, npk):
        assert mod.pick(values, 1.0, False) == 1
        assert mod.pick(values, 1.0, True) == 3
        assert mod.pick(np.array([2.0, 2.0 + 1e-14]), 1.0, False) == 0
