"""Loop kernels compiled with numba.

Every function here has a batched counterpart with the same name and
signature in ``_kernels_np``. Masks and actions are indexed by integers
whose binary expansion, most significant bit first, gives the bit vector,
so integer order equals lexicographic order of the vectors.
"""

import numpy as np
from numba import njit

GOSPA, OSPA, UOSPA = 0, 1, 2
TIE_RTOL = 1e-12
PAIR_MEMO_LIMIT = 10

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True)
def uniform(seed, trial, component, stream):
    """Counter-based uniform on [0, 1) keyed by (seed, trial, component, stream)."""
    key = _mix64(np.uint64(seed) ^ _mix64((np.uint64(trial) + _ONE) * _GOLDEN))
    lane = np.uint64(2 * component + stream + 1)
    h = _mix64(key + lane * _GOLDEN)
    return np.float64(h >> _S11) * _INV53


@njit(cache=True)
def _hungarian(cost):
    # shortest augmenting path with potentials; requires rows <= cols
    n, m = cost.shape
    u = np.zeros(n + 1)
    v = np.zeros(m + 1)
    owner = np.zeros(m + 1, np.int64)
    way = np.zeros(m + 1, np.int64)
    minv = np.empty(m + 1)
    used = np.empty(m + 1, np.bool_)
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv[:] = np.inf
        used[:] = False
        while True:
            used[j0] = True
            i0 = owner[j0]
            delta = np.inf
            j1 = 0
            for j in range(1, m + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while True:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
            if j0 == 0:
                break
    col_of_row = np.full(n, -1, np.int64)
    for j in range(1, m + 1):
        if owner[j] != 0:
            col_of_row[owner[j] - 1] = j - 1
    return col_of_row


@njit(cache=True)
def assign(cost):
    """Minimum-cost matching saturating the smaller side; pairs sorted by row."""
    n, m = cost.shape
    k = min(n, m)
    rows = np.empty(k, np.int64)
    cols = np.empty(k, np.int64)
    if k == 0:
        return rows, cols
    if n <= m:
        match = _hungarian(cost)
        for i in range(n):
            rows[i] = i
            cols[i] = match[i]
    else:
        match = _hungarian(cost.T.copy())
        order = np.argsort(match)
        for t in range(m):
            rows[t] = match[order[t]]
            cols[t] = order[t]
    return rows, cols


@njit(cache=True)
def metric_pow(X, Y, c, p, metric):
    """p-th power of GOSPA (alpha=2), OSPA or UOSPA between point arrays."""
    nx = X.shape[0]
    ny = Y.shape[0]
    cp = c**p
    if metric == GOSPA:
        if nx == 0 or ny == 0:
            return 0.5 * cp * (nx + ny)
        cost = np.empty((nx, ny))
        dp = np.empty((nx, ny))
        for i in range(nx):
            for j in range(ny):
                d = np.sqrt(np.sum((X[i] - Y[j]) ** 2))
                dp[i, j] = d**p
                cost[i, j] = min(dp[i, j], cp)
        rows, cols = assign(cost)
        loc = 0.0
        kept = 0
        for t in range(rows.shape[0]):
            if dp[rows[t], cols[t]] < cp:
                loc += dp[rows[t], cols[t]]
                kept += 1
        return loc + 0.5 * cp * (nx + ny - 2 * kept)
    # OSPA / UOSPA are symmetric; put the smaller set first
    if nx > ny:
        X, Y = Y, X
        nx, ny = ny, nx
    if ny == 0:
        return 0.0
    total = cp * (ny - nx)
    if nx > 0:
        cost = np.empty((nx, ny))
        for i in range(nx):
            for j in range(ny):
                d = np.sqrt(np.sum((X[i] - Y[j]) ** 2))
                cost[i, j] = min(d, c) ** p
        rows, cols = assign(cost)
        for t in range(rows.shape[0]):
            total += cost[rows[t], cols[t]]
    if metric == OSPA:
        return total / ny
    return total


@njit(cache=True)
def cardinality(r):
    n = r.shape[0]
    rho = np.zeros(n + 1)
    rho[0] = 1.0
    for i in range(n):
        ri = r[i]
        for k in range(i + 1, 0, -1):
            rho[k] = rho[k] * (1.0 - ri) + rho[k - 1] * ri
        rho[0] *= 1.0 - ri
    return rho


@njit(cache=True)
def _popcount(k):
    count = 0
    while k:
        count += k & 1
        k >>= 1
    return count


@njit(cache=True)
def ms_all_masks(r, metric, c):
    """Mean-square metric error of every estimate mask under far separation."""
    n = r.shape[0]
    size = 1 << n
    c2 = c * c
    out = np.empty(size)
    rho = cardinality(r)
    loo = np.empty((n, max(n, 1)))
    if metric == OSPA:
        rest = np.empty(max(n - 1, 0))
        for i in range(n):
            t = 0
            for j in range(n):
                if j != i:
                    rest[t] = r[j]
                    t += 1
            loo[i, :n] = cardinality(rest)
    for k in range(size):
        nhat = _popcount(k)
        if metric == GOSPA:
            acc = 0.0
            for i in range(n):
                if (k >> (n - 1 - i)) & 1:
                    acc += 1.0 - r[i]
                else:
                    acc += r[i]
            out[k] = 0.5 * c2 * acc
        elif metric == UOSPA:
            acc = 0.0
            for m in range(n + 1):
                acc += rho[m] * max(m, nhat)
            for i in range(n):
                if (k >> (n - 1 - i)) & 1:
                    acc -= r[i]
            out[k] = c2 * acc
        else:
            if nhat == 0:
                out[k] = c2 * (1.0 - rho[0])
            else:
                acc = 0.0
                for i in range(n):
                    if (k >> (n - 1 - i)) & 1:
                        inner = 0.0
                        for m in range(n):
                            inner += loo[i, m] / max(m + 1, nhat)
                        acc += r[i] * inner
                out[k] = c2 * (1.0 - acc)
    return out


@njit(cache=True)
def pick(values, scale, prefer_more):
    """Index of the minimum with ties broken on bit count, then index."""
    best = values.min()
    tol = TIE_RTOL * max(abs(best), scale)
    chosen = -1
    chosen_bits = 0
    for k in range(values.shape[0]):
        if values[k] <= best + tol:
            bits = _popcount(k)
            if chosen < 0:
                better = True
            elif prefer_more:
                better = bits > chosen_bits
            else:
                better = bits < chosen_bits
            if better:
                chosen = k
                chosen_bits = bits
    return chosen


@njit(cache=True)
def action_errors(r, pd, c, metric):
    """Expected minimum mean-square error (no sensing cost) for every action."""
    n = r.shape[0]
    out = np.zeros(1 << n)
    post = np.empty(n)
    observed = np.empty(n, np.int64)
    for a in range(1 << n):
        n_obs = 0
        for i in range(n):
            if (a >> (n - 1 - i)) & 1:
                observed[n_obs] = i
                n_obs += 1
        total = 0.0
        for o in range(1 << n_obs):
            prob = 1.0
            post[:] = r
            for t in range(n_obs):
                i = observed[t]
                if (o >> (n_obs - 1 - t)) & 1:
                    prob *= r[i] * pd
                    post[i] = 1.0
                else:
                    q = 1.0 - r[i] * pd
                    prob *= q
                    post[i] = r[i] * (1.0 - pd) / q if q > 0.0 else 0.0
            if prob == 0.0:
                continue
            total += prob * ms_all_masks(post, metric, c).min()
        out[a] = total
    return out


@njit(cache=True)
def mc_trial_errors(r, pd, action, metric, c, seed, start, count):
    """Realized squared errors of ``count`` trials starting at index ``start``.

    Components sit on a 1-D grid with spacing 2c. The estimate depends only on
    which components were detected, and the error only on the (truth, estimate)
    pair, so both are memoised by bit code.
    """
    n = r.shape[0]
    out = np.empty(count)
    post = np.empty(n)
    exists = np.empty(n, np.bool_)
    mask_memo = np.full(1 << n, -1, np.int64)
    pair_memo = np.full(1 << (2 * n) if n <= PAIR_MEMO_LIMIT else 0, -1.0)
    for t in range(count):
        trial = start + t
        n_true = 0
        truth = 0
        det = 0
        for i in range(n):
            exists[i] = uniform(seed, trial, i, 0) < r[i]
            n_true += exists[i]
            truth = truth << 1
            det = det << 1
            if exists[i]:
                truth |= 1
                if action[i] and uniform(seed, trial, i, 1) < pd:
                    det |= 1
        k = mask_memo[det]
        if k < 0:
            for i in range(n):
                post[i] = r[i]
                if action[i]:
                    if (det >> (n - 1 - i)) & 1:
                        post[i] = 1.0
                    else:
                        post[i] = r[i] * (1.0 - pd) / (1.0 - r[i] * pd)
            k = pick(ms_all_masks(post, metric, c), c * c, False)
            mask_memo[det] = k
        pair = (truth << n) | k
        if pair_memo.shape[0] and pair_memo[pair] >= 0.0:
            out[t] = pair_memo[pair]
            continue
        n_est = _popcount(k)
        X = np.empty((n_true, 1))
        Y = np.empty((n_est, 1))
        a = 0
        b = 0
        for i in range(n):
            if exists[i]:
                X[a, 0] = 2.0 * c * i
                a += 1
            if (k >> (n - 1 - i)) & 1:
                Y[b, 0] = 2.0 * c * i
                b += 1
        out[t] = metric_pow(X, Y, c, 2.0, metric)
        if pair_memo.shape[0]:
            pair_memo[pair] = out[t]
    return out
