"""Self-checks run by ``metric-sensing verify``.

Each check compares an analytic path against an independent one and
reports its largest deviation; ``tol_scale`` multiplies every tolerance.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .bernoulli import MultiBernoulli, SensorModel
from .estimation import MS_ERROR, brute_force_ms, mask_from_index
from .management import (
    gospa_action_cost,
    gospa_closed_form_decision,
    metric_action_cost,
    optimal_action,
)
from .metrics import Metric, MetricParams
from .simulation import McConfig, mc_expected_cost
from .two_target import ospa_measurement_costs

ORACLE_TOL = 1e-10
MC_SIGMAS = 4.0

# (existences, detection probability, sensing cost, action)
MC_SCENARIOS = (
    ((0.5,), 0.7, 0.0, (0,)),
    ((0.5,), 0.7, 0.0, (1,)),
    ((0.6, 0.6), 0.6, 10.0, (1, 1)),
    ((0.6, 0.6), 0.6, 10.0, (1, 0)),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _random_existences(rng, n):
    # mix in exact 0, 0.5 and 1 so the edge cases are always exercised
    r = rng.uniform(size=n)
    special = rng.uniform(size=n) < 0.15
    r[special] = rng.choice([0.0, 0.5, 1.0], size=special.sum())
    return r


def oracle_deviation(existences, c):
    """Largest gap between closed-form, kernel and brute-force mean-square errors."""
    r = np.asarray(existences, dtype=float)
    n = len(r)
    locations = 2.0 * c * np.arange(n)
    params = MetricParams(c, 2.0)
    worst = 0.0
    for metric in Metric:
        table = kernels().ms_all_masks(np.ascontiguousarray(r), metric.code, float(c))
        for k in range(1 << n):
            mask = mask_from_index(k, n)
            closed = MS_ERROR[metric](r, mask, c)
            brute = brute_force_ms(r, locations, mask, metric, params)
            worst = max(worst, abs(closed - brute), abs(table[k] - brute))
    return worst


def check_oracle(rng, tol_scale, c=10.0, draws=200, sizes=(1, 2, 3, 4), extra=()):
    tol = ORACLE_TOL * tol_scale
    worst = 0.0
    count = 0
    cases = [_random_existences(rng, n) for n in sizes for _ in range(draws)]
    cases += [np.asarray(e, dtype=float) for e in extra]
    for r in cases:
        worst = max(worst, oracle_deviation(r, c))
        count += 1
    return CheckResult(
        "oracle-equivalence",
        worst <= tol,
        f"max abs deviation {worst:.3g} over {count} existence vectors (tol {tol:.3g})",
    )


def check_two_target_ospa(rng, tol_scale, c=10.0, draws=100):
    tol = ORACLE_TOL * tol_scale
    worst = 0.0
    worst_term = 0.0
    for _ in range(draws):
        r1, r2, pd = rng.uniform(size=3)
        s = rng.uniform(0.0, 0.25 * c * c)
        belief = MultiBernoulli.on_grid([r1, r2], c)
        sensor = SensorModel(pd)
        expected, both = ospa_measurement_costs(r1, r2, pd, c)
        worst_term = max(worst_term, abs(both))
        for action, cm in expected.items():
            got = metric_action_cost(belief, sensor, c, s, action, Metric.OSPA).total
            worst = max(worst, abs(got - (cm + s * sum(action))))
    passed = worst <= tol and worst_term <= 1e-12 * c * c * tol_scale
    return CheckResult(
        "two-target-ospa",
        passed,
        f"max abs deviation {worst:.3g} over {draws} draws; "
        f"largest double-detection term {worst_term:.3g}",
    )


def _separable(belief, sensor, c, s, tol):
    n = len(belief)
    decision = optimal_action(belief, sensor, c, s, Metric.GOSPA)
    closed = tuple(gospa_closed_form_decision(r, sensor, c, s) for r in belief.existences)
    worst = 0.0
    for k in range(1 << n):
        action = mask_from_index(k, n)
        additive = gospa_action_cost(belief, sensor, c, s, action).total
        enumerated = metric_action_cost(belief, sensor, c, s, action, Metric.GOSPA).total
        kernel = decision.cost_of(action).total
        worst = max(worst, abs(additive - enumerated), abs(additive - kernel))
    return decision.optimal_action == closed, worst


def check_separability(rng, tol_scale, c=10.0, draws=100, sizes=(2, 3, 4), beliefs=()):
    tol = ORACLE_TOL * tol_scale
    mismatches = 0
    worst = 0.0
    cases = []
    for n in sizes:
        for _ in range(draws):
            pd = rng.uniform(0.05, 1.0)
            s = rng.uniform(0.01, 0.3 * c * c)
            cases.append((MultiBernoulli.on_grid(rng.uniform(size=n), c), SensorModel(pd), c, s))
    cases.extend(beliefs)
    for belief, sensor, cc, s in cases:
        same, gap = _separable(belief, sensor, cc, s, tol)
        mismatches += not same
        worst = max(worst, gap)
    return CheckResult(
        "gospa-separability",
        mismatches == 0 and worst <= tol,
        f"{mismatches} decision mismatches in {len(cases)} beliefs; "
        f"max additive-vs-enumerated gap {worst:.3g}",
    )


def second_action_sequence(metric, c=10.0, pd=0.6, s=10.0, r2=0.6, step=0.01):
    sensor = SensorModel(pd)
    r1_values = np.round(np.arange(0.0, 1.0 + 1e-9, step), 12)
    return [
        optimal_action(MultiBernoulli.on_grid([r1, r2], c), sensor, c, s, metric).optimal_action
        for r1 in r1_values
    ]


def transitions(sequence):
    return sum(a != b for a, b in zip(sequence, sequence[1:]))


def check_entanglement():
    details = []
    passed = True
    for metric in Metric:
        seq = second_action_sequence(metric)
        a2 = [a[1] for a in seq]
        n_changes = transitions(a2)
        details.append(f"{metric.value} a2 changes {n_changes}")
        if metric is Metric.GOSPA:
            passed &= n_changes == 0
        else:
            passed &= n_changes > 0
        if metric is Metric.OSPA:
            passed &= seq[0] == (0, 1) and n_changes >= 2
            details.append(f"ospa starts at {seq[0]}")
    return CheckResult("entanglement", bool(passed), "; ".join(details))


def check_monte_carlo(trials, seed, tol_scale, c=10.0, scenarios=MC_SCENARIOS, metrics=(Metric.GOSPA, Metric.OSPA)):
    failures = []
    worst = 0.0
    count = 0
    for r, pd, s, action in scenarios:
        belief = MultiBernoulli.on_grid(r, c)
        sensor = SensorModel(pd)
        for metric in metrics:
            analytic = metric_action_cost(belief, sensor, c, s, action, metric).total
            mc = mc_expected_cost(belief, sensor, c, s, action, metric, McConfig(trials, seed))
            gap = abs(mc.mean - analytic)
            allowed = tol_scale * max(MC_SIGMAS * mc.std_error, 1e-9)
            ratio = gap / mc.std_error if mc.std_error > 0 else (0.0 if gap == 0 else np.inf)
            worst = max(worst, ratio)
            count += 1
            if gap > allowed:
                failures.append(f"{metric.value} r={list(r)} a={list(action)}")
    detail = f"{count} scenarios, worst |mean - analytic| = {worst:.3g} standard errors"
    if failures:
        detail += "; failing: " + ", ".join(failures)
    return CheckResult("monte-carlo", not failures, detail)


def run_checks(trials=100_000, seed=0, tol_scale=1.0, scenario=None):
    rng = np.random.default_rng(seed)
    results = [
        check_oracle(rng, tol_scale),
        check_two_target_ospa(rng, tol_scale),
        check_separability(rng, tol_scale),
        check_entanglement(),
        check_monte_carlo(trials, seed, tol_scale),
    ]
    if scenario is not None:
        results.extend(scenario_checks(scenario, trials, seed, tol_scale))
    return results


def scenario_checks(scenario, trials, seed, tol_scale):
    belief = scenario.belief()
    sensor = scenario.sensor
    c = scenario.get("c")
    s = scenario.get("s")
    n = len(belief)
    r = belief.existences
    oracle = check_oracle(None, tol_scale, c=c, sizes=(), extra=[r])
    oracle = CheckResult("scenario-oracle-equivalence", oracle.passed, oracle.detail)
    sep = check_separability(None, tol_scale, sizes=(), beliefs=[(belief, sensor, c, s)])
    sep = CheckResult("scenario-gospa-separability", sep.passed, sep.detail)
    mc_cases = tuple((tuple(r), sensor.detection_probability, s, mask_from_index(k, n)) for k in range(1 << n))
    mc = check_monte_carlo(trials, seed, tol_scale, c=c, scenarios=mc_cases, metrics=tuple(Metric))
    mc = CheckResult("scenario-monte-carlo", mc.passed, mc.detail)
    return [oracle, sep, mc]
