"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_backends.py [--repeat 3]

Each workload runs once per backend to warm up (jit compile, scipy import),
then the best of ``--repeat`` runs is reported.
"""

import argparse
import time

import numpy as np

from metric_sensing import McConfig, Metric, MultiBernoulli, SensorModel, mc_expected_cost, use_backend
from metric_sensing import sweeps
from metric_sensing._backend import HAVE_NUMBA, kernels

C = 10.0


def region2():
    grid = sweeps.grid(0.0, 1.0, 0.02)
    return list(sweeps.region2_rows(C, 0.6, 10.0, grid, grid, list(Metric)))


def monte_carlo():
    belief = MultiBernoulli.on_grid([0.6, 0.3, 0.8], C)
    return mc_expected_cost(belief, SensorModel(0.6), C, 10.0, (1, 0, 1), Metric.OSPA, McConfig(100_000, 0))


def ms_tables():
    rng = np.random.default_rng(0)
    k = kernels()
    return [k.ms_all_masks(rng.uniform(size=10), metric.code, C) for metric in Metric for _ in range(20)]


WORKLOADS = {
    "region2 (51x51 grid, 3 metrics)": region2,
    "monte carlo (1e5 trials, N=3)": monte_carlo,
    "ms tables (N=10, 60 tables)": ms_tables,
}


def bench(fn, repeat):
    fn()
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'workload':34s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fn in WORKLOADS.items():
        times = {}
        for backend in ("numba", "numpy"):
            with use_backend(backend):
                times[backend] = bench(fn, args.repeat)
        print(f"{name:34s} {times['numba']:9.3f}s {times['numpy']:9.3f}s {times['numpy'] / times['numba']:7.1f}x")


if __name__ == "__main__":
    main()
