"""Hand-expanded OSPA costs for two far-apart Bernoulli components.

These are written out term by term for N = 2 and share no code with the
general enumeration in ``management``; they exist to cross-check it.
"""

import itertools


def msospa_pair(r1, r2, e1, e2, c):
    n_hat = e1 + e2
    if n_hat == 0:
        return c * c * (1.0 - (1.0 - r1) * (1.0 - r2))
    # cardinality of the other component: (1 - r_other, r_other) at n = 0, 1
    total = 0.0
    for e, r, other in ((e1, r1, r2), (e2, r2, r1)):
        total += e * r * ((1.0 - other) / max(1, n_hat) + other / max(2, n_hat))
    return c * c * (1.0 - total)


def mmsospa_pair(r1, r2, c):
    return min(msospa_pair(r1, r2, e1, e2, c) for e1, e2 in itertools.product((0, 1), repeat=2))


def _missed(r, pd):
    return r * (1.0 - pd) / (1.0 - r * pd)


def ospa_measurement_costs(r1, r2, pd, c):
    """Expected MMSOSPA for actions (0,0), (1,0), (0,1), (1,1), plus the
    double-detection term of (1,1) (which should vanish)."""
    q1, q2 = 1.0 - r1 * pd, 1.0 - r2 * pd
    h1, h2 = r1 * pd, r2 * pd
    m1 = _missed(r1, pd) if q1 > 0 else 0.0
    m2 = _missed(r2, pd) if q2 > 0 else 0.0

    cost_00 = mmsospa_pair(r1, r2, c)
    cost_10 = q1 * mmsospa_pair(m1, r2, c) + h1 * mmsospa_pair(1.0, r2, c)
    cost_01 = q2 * mmsospa_pair(r1, m2, c) + h2 * mmsospa_pair(r1, 1.0, c)
    both_detected = h1 * h2 * mmsospa_pair(1.0, 1.0, c)
    cost_11 = (
        q1 * q2 * mmsospa_pair(m1, m2, c)
        + h1 * q2 * mmsospa_pair(1.0, m2, c)
        + h2 * q1 * mmsospa_pair(m1, 1.0, c)
        + both_detected
    )
    costs = {(0, 0): cost_00, (1, 0): cost_10, (0, 1): cost_01, (1, 1): cost_11}
    return costs, both_detected
