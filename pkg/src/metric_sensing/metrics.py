"""OSPA, unnormalised OSPA and GOSPA (alpha = 2) between finite point sets.

Point sets are array-likes of shape ``(n, nx)``; a 1-D sequence of scalars is
read as ``n`` one-dimensional points and an empty sequence as the empty set.
Row order never affects any value.
"""

import enum
from dataclasses import dataclass

import numpy as np

from ._backend import kernels


class DimensionMismatchError(ValueError):
    """Points of different dimension were compared."""


class Metric(enum.Enum):
    GOSPA = "gospa"
    OSPA = "ospa"
    UOSPA = "uospa"

    @property
    def code(self):
        return _CODES[self]

    def distance(self, X, Y, params, distance=None):
        """Metric value between X and Y (the GOSPA total for GOSPA)."""
        distance = distance or base_distance
        if self is Metric.GOSPA:
            return gospa2(X, Y, params, distance).total
        if self is Metric.OSPA:
            return ospa(X, Y, params, distance)
        return uospa(X, Y, params, distance)


_CODES = {Metric.GOSPA: 0, Metric.OSPA: 1, Metric.UOSPA: 2}
_BY_CODE = {v: k for k, v in _CODES.items()}


@dataclass(frozen=True)
class MetricParams:
    cutoff: float
    order: float = 2.0

    def __post_init__(self):
        if not self.cutoff > 0:
            raise ValueError(f"cutoff must be positive, got {self.cutoff}")
        if not 1 <= self.order < np.inf:
            raise ValueError(f"order must satisfy 1 <= p < inf, got {self.order}")


@dataclass(frozen=True)
class Assignment:
    pairs: tuple
    cost: float


@dataclass(frozen=True)
class GospaDecomposition:
    localisation_cost: float
    missed_cost: float
    false_cost: float
    total: float


def base_distance(x, y):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape:
        raise DimensionMismatchError(f"cannot compare states of shape {x.shape} and {y.shape}")
    return float(np.sqrt(np.sum((x - y) ** 2)))


def as_points(points):
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        return arr.reshape(0, arr.shape[-1] if arr.ndim == 2 else 0)
    if arr.ndim == 1:
        return arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"point set must be 1-D or 2-D, got shape {arr.shape}")
    return arr


def _distance_matrix(X, Y, distance):
    if len(X) and len(Y) and X.shape[1] != Y.shape[1]:
        raise DimensionMismatchError(
            f"point sets have dimensions {X.shape[1]} and {Y.shape[1]}"
        )
    if len(X) == 0 or len(Y) == 0:
        return np.zeros((len(X), len(Y)))
    if distance is base_distance:
        diff = X[:, None, :] - Y[None, :, :]
        return np.sqrt(np.sum(diff**2, axis=-1))
    return np.array([[distance(x, y) for y in Y] for x in X]).reshape(len(X), len(Y))


def _full_matching_cost(cost):
    rows, cols = kernels().assign(np.ascontiguousarray(cost, dtype=float))
    return float(cost[rows, cols].sum())


def solve_assignment(cost_matrix):
    """Minimum-cost matching in which the smaller side is fully matched.

    Among optimal matchings the one whose row-sorted pair list is
    lexicographically smallest is returned, so ties resolve identically
    whichever backend solved the problem.
    """
    cost = np.asarray(cost_matrix, dtype=float)
    if cost.ndim != 2:
        raise ValueError("cost matrix must be 2-D")
    if not np.all(np.isfinite(cost)):
        raise ValueError("cost matrix entries must be finite")
    m, n = cost.shape
    if min(m, n) == 0:
        return Assignment(pairs=(), cost=0.0)
    target = _full_matching_cost(cost)
    tol = 1e-12 * max(1.0, float(np.abs(cost).sum()))

    pairs = []
    spent = 0.0
    free_cols = list(range(n))
    needed = min(m, n)
    next_row = 0
    while len(pairs) < needed:
        found = False
        for i in range(next_row, m):
            later_rows = list(range(i + 1, m))
            for j in free_cols:
                rest_cols = [col for col in free_cols if col != j]
                remaining = needed - len(pairs) - 1
                if len(later_rows) < remaining:
                    continue
                rest = 0.0
                if remaining:
                    rest = _full_matching_cost(cost[np.ix_(later_rows, rest_cols)])
                if spent + cost[i, j] + rest <= target + tol:
                    pairs.append((i, j))
                    spent += cost[i, j]
                    free_cols.remove(j)
                    next_row = i + 1
                    found = True
                    break
            if found:
                break
        if not found:  # pragma: no cover - guarded by the tolerance above
            raise RuntimeError("failed to reconstruct an optimal matching")
    return Assignment(pairs=tuple(pairs), cost=float(sum(cost[i, j] for i, j in pairs)))


def _ospa_pow(X, Y, params, distance, normalise):
    X, Y = as_points(X), as_points(Y)
    D = _distance_matrix(X, Y, distance)
    if len(X) > len(Y):
        X, Y, D = Y, X, D.T
    if len(Y) == 0:
        return 0.0
    c, p = params.cutoff, params.order
    total = c**p * (len(Y) - len(X))
    if len(X):
        cost = np.minimum(D, c) ** p
        total += _full_matching_cost(cost)
    return total / len(Y) if normalise else total


def ospa(X, Y, params, distance=base_distance):
    return _ospa_pow(X, Y, params, distance, True) ** (1.0 / params.order)


def uospa(X, Y, params, distance=base_distance):
    return _ospa_pow(X, Y, params, distance, False) ** (1.0 / params.order)


def gospa2(X, Y, params, distance=base_distance):
    """GOSPA with alpha = 2 and its localisation / missed / false split.

    Pairs are solved on costs clipped at c**p and then any pair at distance
    >= c is released; at exactly c**p keeping or releasing a pair costs the
    same, so the clipped optimum is the GOSPA optimum.
    """
    X, Y = as_points(X), as_points(Y)
    D = _distance_matrix(X, Y, distance)
    c, p = params.cutoff, params.order
    cp = c**p
    localisation = 0.0
    assigned = 0
    if len(X) and len(Y):
        dp = D**p
        rows, cols = kernels().assign(np.ascontiguousarray(np.minimum(dp, cp)))
        keep = D[rows, cols] < c
        localisation = float(dp[rows[keep], cols[keep]].sum())
        assigned = int(keep.sum())
    missed = 0.5 * cp * (len(X) - assigned)
    false = 0.5 * cp * (len(Y) - assigned)
    total = (localisation + missed + false) ** (1.0 / p)
    return GospaDecomposition(localisation, missed, false, total)


def metric_pow_from_code(X, Y, c, p, code):
    """p-th power of the metric picked by its kernel code (used by kernels)."""
    metric = _BY_CODE[int(code)]
    params = MetricParams(c, p)
    if metric is Metric.GOSPA:
        parts = gospa2(X, Y, params)
        return parts.localisation_cost + parts.missed_cost + parts.false_cost
    return _ospa_pow(X, Y, params, base_distance, metric is Metric.OSPA)
