"""Seeded Monte-Carlo estimates of expected action costs.

Random numbers come from a counter-based hash of (seed, trial, component,
lane), so each trial is an independent substream and results depend only on
the seed and the trial indices, never on evaluation order or backend.
Components are realized on a 1-D grid with spacing 2c.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .bernoulli import check_bits
from .metrics import Metric

CHUNK = 1 << 16


@dataclass(frozen=True)
class McConfig:
    num_trials: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.num_trials < 1:
            raise ValueError("num_trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class McResult:
    mean: float
    std_error: float
    num_trials: int


def _run(belief, sensor, c, action, metric, seed, start, count):
    metric = Metric(metric)
    action = np.array(check_bits(action, len(belief)), dtype=np.int64)
    r = np.ascontiguousarray(belief.existences)
    return kernels().mc_trial_errors(
        r,
        float(sensor.detection_probability),
        action,
        metric.code,
        float(c),
        np.uint64(seed),
        int(start),
        int(count),
    )


def simulate_trial(belief, sensor, c, action, metric, seed, trial):
    """Squared metric error between the truth and the optimal estimate in one trial."""
    return float(_run(belief, sensor, c, action, metric, seed, trial, 1)[0])


def trial_errors(belief, sensor, c, action, metric, cfg):
    parts = []
    for start in range(0, cfg.num_trials, CHUNK):
        count = min(CHUNK, cfg.num_trials - start)
        parts.append(_run(belief, sensor, c, action, metric, cfg.seed, start, count))
    return np.concatenate(parts)


def mc_expected_cost(belief, sensor, c, s, action, metric, cfg):
    errors = trial_errors(belief, sensor, c, action, metric, cfg)
    n = len(errors)
    std_error = float(np.std(errors, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return McResult(float(np.mean(errors)) + s * sum(action), std_error, n)
