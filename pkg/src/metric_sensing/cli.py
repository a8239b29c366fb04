"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input or arguments,
3 point-dimension mismatch.
"""

import argparse
import contextlib
import sys

from . import sweeps
from .metrics import DimensionMismatchError, Metric, MetricParams, gospa2, ospa, uospa
from .scenario import ScenarioError, load_scenario

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DIMENSION = 0, 1, 2, 3


def _metrics(choice):
    if choice == "all":
        return [Metric.GOSPA, Metric.OSPA, Metric.UOSPA]
    return [Metric(choice)]


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            yield handle


def cmd_metric(args):
    scenario = load_scenario(args.input)
    X, Y = scenario.point_sets()
    c = args.c if args.c is not None else scenario.get("c")
    p = args.p if args.p is not None else scenario.get("p")
    params = MetricParams(c, p)
    parts = gospa2(X, Y, params)
    rows = [
        ("ospa", ospa(X, Y, params)),
        ("uospa", uospa(X, Y, params)),
        ("gospa", parts.total),
        ("gospa_localisation", parts.localisation_cost),
        ("gospa_missed", parts.missed_cost),
        ("gospa_false", parts.false_cost),
    ]
    with _output(args.out) as out:
        for name, value in rows:
            out.write(f"{name} {sweeps.format_value(value)}\n")
    return EXIT_OK


def cmd_cost_curve(args):
    r_grid = sweeps.grid(0.0, 1.0, args.grid_step)
    rows = sweeps.cost_curve_rows(args.c, args.pd, args.s, r_grid)
    with _output(args.out) as out:
        sweeps.write_csv(out, sweeps.COST_CURVE_HEADER, rows)
    return EXIT_OK


def cmd_region1(args):
    r_grid = sweeps.grid(0.0, 1.0, args.grid_step)
    s_grid = sweeps.grid(0.0, args.s_max, args.s_step)
    rows = sweeps.region1_rows(args.c, args.pd, r_grid, s_grid)
    with _output(args.out) as out:
        sweeps.write_csv(out, sweeps.REGION1_HEADER, rows)
    return EXIT_OK


def cmd_region2(args):
    r_grid = sweeps.grid(0.0, 1.0, args.grid_step)
    rows = sweeps.region2_rows(args.c, args.pd, args.s, r_grid, r_grid, _metrics(args.metric))
    with _output(args.out) as out:
        sweeps.write_csv(out, sweeps.REGION2_HEADER, rows)
    return EXIT_OK


def cmd_slice(args):
    r_grid = sweeps.grid(0.0, 1.0, args.grid_step)
    rows = sweeps.slice_rows(args.c, args.pd, args.s, args.r2, r_grid, _metrics(args.metric))
    with _output(args.out) as out:
        sweeps.write_csv(out, sweeps.SLICE_HEADER, rows)
    return EXIT_OK


def cmd_verify(args):
    from .verify import run_checks

    scenario = load_scenario(args.scenario) if args.scenario else None
    results = run_checks(trials=args.trials, seed=args.seed, tol_scale=args.tol_scale, scenario=scenario)
    passed = all(result.passed for result in results)
    with _output(args.out) as out:
        for result in results:
            out.write(result.line() + "\n")
        out.write(f"{'PASS' if passed else 'FAIL'} overall: {sum(r.passed for r in results)}/{len(results)} checks passed\n")
    return EXIT_OK if passed else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="metric-sensing",
        description="Metric-driven myopic sensor management with OSPA, UOSPA and GOSPA.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", type=float, default=10.0, help="cutoff distance (default 10)")
    common.add_argument("--out", help="write output here instead of stdout")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--grid-step", type=float, default=0.01, help="step of the existence grid")

    metric_choice = argparse.ArgumentParser(add_help=False)
    metric_choice.add_argument("--metric", choices=["gospa", "ospa", "uospa", "all"], default="all", help="metric(s) to sweep")

    p = sub.add_parser("metric", help="OSPA, UOSPA and GOSPA between two point sets in a file")
    p.add_argument("input", help="file with 'x'/'y' point lines and optional 'param c|p' lines")
    p.add_argument("--c", type=float, default=None, help="cutoff (overrides the file)")
    p.add_argument("--p", type=float, default=None, help="order (overrides the file)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("cost-curve", parents=[common, grid], help="single-target GOSPA costs against r")
    p.add_argument("--pd", type=float, default=0.7, help="detection probability")
    p.add_argument("--s", type=float, nargs="+", default=[0.0, 10.0, 20.0], help="sensing costs")
    p.set_defaults(func=cmd_cost_curve)

    p = sub.add_parser("region1", parents=[common, grid], help="single-target GOSPA decision over (r, s)")
    p.add_argument("--pd", type=float, default=0.7, help="detection probability")
    p.add_argument("--s-step", type=float, default=0.25, help="step of the sensing-cost grid")
    p.add_argument("--s-max", type=float, default=25.0, help="largest sensing cost")
    p.set_defaults(func=cmd_region1)

    p = sub.add_parser("region2", parents=[common, grid, metric_choice], help="two-target decisions over (r1, r2)")
    p.add_argument("--pd", type=float, default=0.6, help="detection probability")
    p.add_argument("--s", type=float, default=10.0, help="cost per active sensor")
    p.set_defaults(func=cmd_region2)

    p = sub.add_parser("slice", parents=[common, grid, metric_choice], help="two-target decisions against r1 at fixed r2")
    p.add_argument("--pd", type=float, default=0.6, help="detection probability")
    p.add_argument("--s", type=float, default=10.0, help="cost per active sensor")
    p.add_argument("--r2", type=float, default=0.6, help="existence probability of the second target")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("verify", help="run the oracle, separability, entanglement and Monte-Carlo checks")
    p.add_argument("scenario", nargs="?", help="optional scenario file with extra checks")
    p.add_argument("--trials", type=int, default=100_000, help="Monte-Carlo trials per scenario")
    p.add_argument("--seed", type=int, default=0, help="seed for draws and random checks")
    p.add_argument("--tol-scale", type=float, default=1.0, help="multiply every tolerance (0 forces failures)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (ScenarioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
