"""Parameter sweeps behind the CSV subcommands."""

import numpy as np

from .bernoulli import MultiBernoulli, SensorModel
from .management import gospa_closed_form_decision, gospa_component_cost, optimal_action
from .metrics import Metric

COST_CURVE_HEADER = ("r", "s", "cost_a0", "cost_a1")
REGION1_HEADER = ("r", "s", "optimal_a")
REGION2_HEADER = ("r1", "r2", "metric", "a1", "a2")
SLICE_HEADER = ("r1", "metric", "a1", "a2")


def grid(low, high, step):
    """Closed grid low, low + step, ... <= high, rounded to 12 decimals."""
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if low > high:
        raise ValueError(f"grid minimum {low} exceeds maximum {high}")
    count = int(np.floor((high - low) / step + 1e-9)) + 1
    return np.round(low + step * np.arange(count), 12)


def _check_unit(values, name):
    values = np.asarray(values, dtype=float)
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise ValueError(f"{name} values must lie in [0, 1]")
    return values


def cost_curve_rows(c, pd, s_values, r_grid):
    sensor = SensorModel(pd)
    r_grid = _check_unit(r_grid, "r")
    for s in s_values:
        if s < 0:
            raise ValueError("sensing cost must be non-negative")
        for r in r_grid:
            r = float(r)
            yield (
                r,
                float(s),
                gospa_component_cost(r, sensor, c, s, 0),
                gospa_component_cost(r, sensor, c, s, 1),
            )


def region1_rows(c, pd, r_grid, s_grid):
    sensor = SensorModel(pd)
    r_grid = _check_unit(r_grid, "r")
    for s in s_grid:
        if s < 0:
            raise ValueError("sensing cost must be non-negative")
        for r in r_grid:
            yield float(r), float(s), gospa_closed_form_decision(float(r), sensor, c, s)


def _pair_action(r1, r2, c, pd, s, metric):
    belief = MultiBernoulli.on_grid([r1, r2], c)
    return optimal_action(belief, SensorModel(pd), c, s, metric).optimal_action


def region2_rows(c, pd, s, r1_grid, r2_grid, metrics):
    r1_grid = _check_unit(r1_grid, "r1")
    r2_grid = _check_unit(r2_grid, "r2")
    for metric in metrics:
        metric = Metric(metric)
        for r1 in r1_grid:
            for r2 in r2_grid:
                a1, a2 = _pair_action(float(r1), float(r2), c, pd, s, metric)
                yield float(r1), float(r2), metric.value, a1, a2


def slice_rows(c, pd, s, r2, r1_grid, metrics):
    r1_grid = _check_unit(r1_grid, "r1")
    _check_unit([r2], "r2")
    for metric in metrics:
        metric = Metric(metric)
        for r1 in r1_grid:
            a1, a2 = _pair_action(float(r1), float(r2), c, pd, s, metric)
            yield float(r1), metric.value, a1, a2


def format_value(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    text = f"{float(value):.12g}"
    return "0" if text == "-0" else text


def write_csv(stream, header, rows):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(format_value(v) for v in row) + "\n")
