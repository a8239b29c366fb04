import numpy as np
import pytest

from metric_sensing import (
    McConfig,
    Metric,
    MultiBernoulli,
    SensorModel,
    mc_expected_cost,
    metric_action_cost,
    simulate_trial,
)
from metric_sensing.simulation import trial_errors

C = 10.0


def belief(*r):
    return MultiBernoulli.on_grid(list(r), C)


def test_trivial_trials(backend):
    for metric in Metric:
        assert simulate_trial(belief(1.0), SensorModel(1.0), C, (1,), metric, seed=3, trial=0) == 0.0
        assert simulate_trial(belief(0.0), SensorModel(0.5), C, (0,), metric, seed=3, trial=5) == 0.0


def test_single_target_trial_values(backend):
    cfg = McConfig(2000, 4)
    errors = trial_errors(belief(0.5), SensorModel(0.7), C, (1,), Metric.GOSPA, cfg)
    assert set(np.unique(errors)) <= {0.0, 50.0}


def test_simulate_trial_matches_batch(backend):
    b = belief(0.6, 0.3)
    sensor = SensorModel(0.6)
    cfg = McConfig(50, 8)
    batch = trial_errors(b, sensor, C, (1, 0), Metric.OSPA, cfg)
    single = [simulate_trial(b, sensor, C, (1, 0), Metric.OSPA, 8, t) for t in range(50)]
    np.testing.assert_allclose(single, batch, atol=1e-12)


def test_mc_single_target_measure(backend):
    result = mc_expected_cost(belief(0.5), SensorModel(0.7), C, 0.0, (1,), Metric.GOSPA, McConfig(100_000, 1))
    assert abs(result.mean - 7.5) <= 4 * result.std_error


def test_mc_single_target_no_measure(backend):
    result = mc_expected_cost(belief(0.3), SensorModel(0.7), C, 0.0, (0,), Metric.GOSPA, McConfig(100_000, 2))
    assert abs(result.mean - 15.0) <= 4 * result.std_error


def test_mc_two_targets_ospa(backend):
    b = belief(0.6, 0.6)
    sensor = SensorModel(0.6)
    analytic = metric_action_cost(b, sensor, C, 10.0, (1, 1), Metric.OSPA).total
    result = mc_expected_cost(b, sensor, C, 10.0, (1, 1), Metric.OSPA, McConfig(100_000, 3))
    assert abs(result.mean - analytic) <= 4 * result.std_error


def test_determinism_and_backend_independence():
    from metric_sensing import use_backend

    args = (belief(0.6, 0.2, 0.8), SensorModel(0.6), C, 5.0, (1, 0, 1), Metric.UOSPA, McConfig(20_000, 77))
    with use_backend("numba"):
        first = mc_expected_cost(*args)
        second = mc_expected_cost(*args)
    with use_backend("numpy"):
        third = mc_expected_cost(*args)
    assert first == second
    assert third.mean == pytest.approx(first.mean, rel=1e-12)
    assert third.std_error == pytest.approx(first.std_error, rel=1e-9)


def test_seed_changes_draws():
    args = (belief(0.5), SensorModel(0.7), C, 0.0, (1,), Metric.GOSPA)
    a = mc_expected_cost(*args, McConfig(1000, 1))
    b = mc_expected_cost(*args, McConfig(1000, 2))
    assert a.mean != b.mean


def test_std_error_shrinks_with_trials():
    args = (belief(0.6, 0.6), SensorModel(0.6), C, 10.0, (1, 0), Metric.OSPA)
    small = mc_expected_cost(*args, McConfig(1_000, 9))
    large = mc_expected_cost(*args, McConfig(100_000, 9))
    ratio = small.std_error / large.std_error
    assert 10 / 2 <= ratio <= 10 * 2


def test_config_validation():
    with pytest.raises(ValueError):
        McConfig(0, 1)
    with pytest.raises(ValueError):
        McConfig(10, -1)


def test_trial_index_chunks_are_consistent(monkeypatch):
    from metric_sensing import simulation

    args = (belief(0.6, 0.6), SensorModel(0.6), C, (1, 1), Metric.OSPA, McConfig(1000, 5))
    whole = trial_errors(*args)
    monkeypatch.setattr(simulation, "CHUNK", 64)
    np.testing.assert_array_equal(trial_errors(*args), whole)
