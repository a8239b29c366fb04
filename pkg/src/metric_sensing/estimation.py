"""Mean-square metric errors of point-mass estimates and their minimisers.

An estimate mask reports component ``i`` at its known location when bit
``i`` is set. All closed forms assume p = 2 and components more than the
cutoff apart, so any reported/true pair is either an exact match or
farther than the cutoff.
"""

import itertools

import numpy as np

from ._backend import kernels
from .bernoulli import cardinality_distribution, check_bits, leave_one_out_cardinality
from .metrics import Metric, MetricParams, base_distance

MASK_LIMIT = 16
ORACLE_LIMIT = 20


class EnumerationLimitError(ValueError):
    """An exhaustive enumeration would exceed the configured size limit."""


def _inputs(existences, mask):
    r = np.asarray(existences, dtype=float).reshape(-1)
    return r, np.array(check_bits(mask, len(r), "mask"), dtype=float)


def msgospa(existences, mask, c):
    r, e = _inputs(existences, mask)
    return 0.5 * c * c * float(np.sum(r * (1.0 - e) + (1.0 - r) * e))


def msospa(existences, mask, c):
    r, e = _inputs(existences, mask)
    n_hat = int(e.sum())
    if n_hat == 0:
        return c * c * (1.0 - cardinality_distribution(r)[0])
    matched = 0.0
    for i in np.flatnonzero(e):
        rho_rest = leave_one_out_cardinality(r, i)
        n = np.arange(len(rho_rest))
        matched += r[i] * np.sum(rho_rest / np.maximum(n + 1, n_hat))
    return c * c * (1.0 - matched)


def msuospa(existences, mask, c):
    r, e = _inputs(existences, mask)
    rho = cardinality_distribution(r)
    n_hat = int(e.sum())
    expected_max = np.sum(rho * np.maximum(np.arange(len(rho)), n_hat))
    return c * c * float(expected_max - np.sum(e * r))


MS_ERROR = {Metric.GOSPA: msgospa, Metric.OSPA: msospa, Metric.UOSPA: msuospa}


def optimal_mask_gospa(existences):
    return tuple(int(r > 0.5) for r in np.asarray(existences, dtype=float).reshape(-1))


def mask_from_index(k, n):
    return tuple((k >> (n - 1 - i)) & 1 for i in range(n))


def optimal_mask(existences, metric, c, limit=MASK_LIMIT):
    """Minimum mean-square-error mask and its error, over all 2**N masks.

    Near-ties (1e-12 relative) go to the mask reporting fewer targets, then
    to the lexicographically smallest one.
    """
    metric = Metric(metric)
    r = np.ascontiguousarray(np.asarray(existences, dtype=float).reshape(-1))
    if len(r) > limit:
        raise EnumerationLimitError(f"{len(r)} components exceed the mask limit {limit}")
    k = kernels()
    values = k.ms_all_masks(r, metric.code, float(c))
    best = k.pick(values, float(c) * c, False)
    return mask_from_index(best, len(r)), float(values[best])


def brute_force_ms(existences, locations, mask, metric, params, limit=ORACLE_LIMIT):
    """Expected squared metric error by enumerating every existence pattern."""
    metric = Metric(metric)
    if params.order != 2:
        raise ValueError("mean-square errors are defined for order p = 2")
    r, e = _inputs(existences, mask)
    n = len(r)
    if n > limit:
        raise EnumerationLimitError(f"{n} components exceed the oracle limit {limit}")
    locs = np.asarray(locations, dtype=float).reshape(n, -1)
    for i, j in itertools.combinations(range(n), 2):
        if base_distance(locs[i], locs[j]) <= params.cutoff:
            raise ValueError("locations must be separated by more than the cutoff")
    estimate = locs[e.astype(bool)]
    total = 0.0
    for pattern in itertools.product((0, 1), repeat=n):
        alive = np.array(pattern, dtype=bool)
        weight = float(np.prod(np.where(alive, r, 1.0 - r)))
        if weight == 0.0:
            continue
        total += weight * metric.distance(locs[alive], estimate, params) ** 2
    return total
