"""Myopic sensing decisions driven by the expected minimum mean-square metric error.

An action observes a subset of the components' regions; the cost of an
action is the expected post-measurement minimum mean-square error plus
``s`` per active sensor.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .bernoulli import Outcome, check_bits, outcome_probability, posterior_existence
from .estimation import EnumerationLimitError, mask_from_index, optimal_mask
from .metrics import Metric

ACTION_LIMIT = 10


@dataclass(frozen=True)
class ActionCost:
    action: tuple
    expected_ms_error: float
    sensing_cost: float

    @property
    def total(self):
        return self.expected_ms_error + self.sensing_cost


@dataclass(frozen=True)
class DecisionSummary:
    costs: tuple
    optimal_action: tuple

    def cost_of(self, action):
        action = tuple(action)
        for cost in self.costs:
            if cost.action == action:
                return cost
        raise KeyError(action)


def t_fn(r):
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    return r if r < 0.5 else 1.0 - r


def gospa_component_cost(r, sensor, c, s, a_bit):
    half = 0.5 * c * c
    if not a_bit:
        return half * t_fn(r)
    pd = sensor.detection_probability
    empty = 1.0 - r * pd
    if empty <= 0.0:
        return s
    return half * t_fn(r * (1.0 - pd) / empty) * empty + s


def gospa_action_cost(belief, sensor, c, s, action):
    action = check_bits(action, len(belief))
    error = 0.0
    for comp, bit in zip(belief.components, action):
        error += gospa_component_cost(comp.existence, sensor, c, 0.0, bit)
    return ActionCost(action, error, s * sum(action))


def measure_band(sensor, c, s):
    """Open interval of r in which observing a lone component is optimal, or None."""
    pd = sensor.detection_probability
    c2 = c * c
    if pd == 0.0 or s >= c2 * pd / 4.0:
        return None
    return 2.0 * s / (c2 * pd), (0.5 * c2 - s) / (c2 * (1.0 - 0.5 * pd))


def gospa_closed_form_decision(r, sensor, c, s):
    band = measure_band(sensor, c, s)
    if band is None:
        return 0
    low, high = band
    return int(low < r < high)


def metric_action_cost(belief, sensor, c, s, action, metric):
    """Expected minimum mean-square error of ``action`` by outcome enumeration."""
    metric = Metric(metric)
    action = check_bits(action, len(belief))
    comps = belief.components
    observed = [i for i, bit in enumerate(action) if bit]
    error = 0.0
    for pattern in np.ndindex(*([2] * len(observed))):
        prob = 1.0
        post = [comp.existence for comp in comps]
        for i, hit in zip(observed, pattern):
            outcome = Outcome.DETECTED if hit else Outcome.EMPTY
            prob *= outcome_probability(comps[i], 1, sensor, outcome)
            if prob == 0.0:
                break
            post[i] = posterior_existence(comps[i].existence, sensor, 1, outcome)
        if prob == 0.0:
            continue
        error += prob * optimal_mask(post, metric, c)[1]
    return ActionCost(action, error, s * sum(action))


def optimal_action(belief, sensor, c, s, metric, prefer_sensing=False, limit=ACTION_LIMIT):
    """Cost of every joint action and the minimiser.

    Totals within 1e-12 relative of the minimum are ties; ties go to the
    action with fewer active sensors (more with ``prefer_sensing``), then to
    the lexicographically smallest bit vector.
    """
    metric = Metric(metric)
    n = len(belief)
    if n > limit:
        raise EnumerationLimitError(f"{n} components exceed the action limit {limit}")
    k = kernels()
    r = np.ascontiguousarray(belief.existences)
    errors = k.action_errors(r, float(sensor.detection_probability), float(c), metric.code)
    actions = [mask_from_index(a, n) for a in range(1 << n)]
    sensing = np.array([s * sum(a) for a in actions])
    totals = errors + sensing
    best = k.pick(totals, float(c) * c, bool(prefer_sensing))
    costs = tuple(ActionCost(a, float(err), float(sc)) for a, err, sc in zip(actions, errors, sensing))
    return DecisionSummary(costs, actions[best])
