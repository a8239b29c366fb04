"""Batched numpy/scipy kernels; drop-in replacements for ``_kernels_nb``."""

import numpy as np
from scipy.optimize import linear_sum_assignment

GOSPA, OSPA, UOSPA = 0, 1, 2
TIE_RTOL = 1e-12

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 1.0 / 9007199254740992.0


def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniforms(seed, trials, n_components):
    """Uniform draws of shape (len(trials), n_components, 2); lane 0 is existence."""
    trials = np.asarray(trials, dtype=np.uint64)
    with np.errstate(over="ignore"):
        key = _mix64(np.uint64(seed) ^ _mix64((trials + np.uint64(1)) * _GOLDEN))
        lanes = np.arange(1, 2 * n_components + 1, dtype=np.uint64).reshape(n_components, 2)
        h = _mix64(key[:, None, None] + lanes[None] * _GOLDEN)
    return (h >> np.uint64(11)).astype(np.float64) * _INV53


def uniform(seed, trial, component, stream):
    return float(uniforms(seed, [trial], component + 1)[0, component, stream])


def assign(cost):
    cost = np.asarray(cost, dtype=float)
    if min(cost.shape) == 0:
        empty = np.empty(0, np.int64)
        return empty, empty.copy()
    rows, cols = linear_sum_assignment(cost)
    return rows.astype(np.int64), cols.astype(np.int64)


def cardinality_batch(R):
    R = np.atleast_2d(np.asarray(R, dtype=float))
    rho = np.zeros((R.shape[0], R.shape[1] + 1))
    rho[:, 0] = 1.0
    for i in range(R.shape[1]):
        ri = R[:, i : i + 1]
        shifted = np.zeros_like(rho)
        shifted[:, 1:] = rho[:, :-1]
        rho = rho * (1.0 - ri) + shifted * ri
    return rho


def cardinality(r):
    return cardinality_batch(np.asarray(r, dtype=float)[None, :])[0]


def mask_matrix(n):
    k = np.arange(1 << n)[:, None]
    return (k >> (n - 1 - np.arange(n))[None, :]) & 1


def ms_batch(R, metric, c):
    """Mean-square errors for all masks, one row per existence vector in R."""
    R = np.atleast_2d(np.asarray(R, dtype=float))
    B, n = R.shape
    M = mask_matrix(n).astype(float)
    nhat = M.sum(axis=1)
    c2 = c * c
    if metric == GOSPA:
        return 0.5 * c2 * (R.sum(axis=1)[:, None] + nhat[None, :] - 2.0 * R @ M.T)
    rho = cardinality_batch(R)
    if metric == UOSPA:
        maxed = np.maximum(np.arange(n + 1)[:, None], nhat[None, :])
        return c2 * (rho @ maxed - R @ M.T)
    if n == 0:
        return np.zeros((B, 1))
    loo = np.stack([cardinality_batch(np.delete(R, i, axis=1)) for i in range(n)], axis=1)
    inv = 1.0 / np.maximum(np.arange(1, n + 1)[:, None], nhat[None, :])
    weights = np.einsum("bim,mk->bik", loo, inv)
    matched = np.einsum("ki,bi,bik->bk", M, R, weights)
    out = c2 * (1.0 - matched)
    out[:, nhat == 0] = (c2 * (1.0 - rho[:, 0]))[:, None]
    return out


def ms_all_masks(r, metric, c):
    return ms_batch(np.asarray(r, dtype=float)[None, :], metric, c)[0]


def pick(values, scale, prefer_more):
    values = np.asarray(values, dtype=float)
    best = values.min()
    tol = TIE_RTOL * max(abs(best), scale)
    candidates = np.flatnonzero(values <= best + tol)
    bits = np.array([bin(int(k)).count("1") for k in candidates])
    target = bits.max() if prefer_more else bits.min()
    return int(candidates[bits == target][0])


def _outcome_batch(r, pd, observed):
    # posterior existences and probabilities of every detection pattern
    outcomes = mask_matrix(len(observed)).astype(bool)
    post = np.repeat(r[None, :], outcomes.shape[0], axis=0)
    prob = np.ones(outcomes.shape[0])
    for t, i in enumerate(observed):
        hit = outcomes[:, t]
        q = 1.0 - r[i] * pd
        prob *= np.where(hit, r[i] * pd, q)
        post[:, i] = np.where(hit, 1.0, r[i] * (1.0 - pd) / q if q > 0.0 else 0.0)
    keep = prob > 0.0
    return post[keep], prob[keep]


def action_errors(r, pd, c, metric):
    r = np.asarray(r, dtype=float)
    actions = mask_matrix(len(r))
    out = np.empty(len(actions))
    for a, bits in enumerate(actions):
        post, prob = _outcome_batch(r, pd, np.flatnonzero(bits))
        out[a] = prob @ ms_batch(post, metric, c).min(axis=1)
    return out


def mc_trial_errors(r, pd, action, metric, c, seed, start, count):
    """Vectorized trials: one set-metric evaluation per distinct (truth, estimate) pair."""
    from .metrics import metric_pow_from_code

    r = np.asarray(r, dtype=float)
    action = np.asarray(action).astype(bool)
    n = len(r)
    U = uniforms(seed, np.arange(start, start + count), n)
    exists = U[:, :, 0] < r[None, :]
    detected = exists & action[None, :] & (U[:, :, 1] < pd)

    weights = 1 << (n - 1 - np.arange(n))
    det_code = detected @ weights
    est_bits = np.zeros((count, n), dtype=bool)
    masks = mask_matrix(n).astype(bool)
    for code in np.unique(det_code):
        hit = masks[code]
        post = r.copy()
        missed = action & ~hit
        post[hit] = 1.0
        post[missed] = r[missed] * (1.0 - pd) / (1.0 - r[missed] * pd)
        k = pick(ms_all_masks(post, metric, c), c * c, False)
        est_bits[det_code == code] = masks[k]

    grid = 2.0 * c * np.arange(n)
    pair_code = (exists @ weights) * (1 << n) + est_bits @ weights
    out = np.empty(count)
    for code in np.unique(pair_code):
        rows = pair_code == code
        first = np.flatnonzero(rows)[0]
        X = grid[exists[first]][:, None]
        Y = grid[est_bits[first]][:, None]
        out[rows] = metric_pow_from_code(X, Y, c, 2.0, metric)
    return out
