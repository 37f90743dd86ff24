"""Command-line entry point: ``edasat {gen,solve,profile,bench}``."""

from __future__ import annotations

import argparse
import csv
import logging
import math
import secrets
import sys
from pathlib import Path

from . import bench as bench_mod
from .baselines import BaselineConfig, run_hill_climb, run_sa
from .cnf import generate_random_ksat, read_dimacs, serialize_dimacs
from .eda import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_T_FINAL,
    DEFAULT_T_START,
    EdaConfig,
    EndpointExponential,
    run_eda,
)
from .landscape import EntropyEstimator, assignment_to_literals
from .profiler import ENUMERATION_LIMIT, LANDSCAPE_LIMIT, profile

log = logging.getLogger("edasat")

EXIT_SAT = 10
EXIT_UNKNOWN = 20


class CliError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(32)
        log.warning("no --seed given, using %d", args.seed)
    return args.seed


def cmd_gen(args) -> int:
    if not 1 <= args.k <= args.n:
        raise CliError(f"clause width must satisfy 1 <= k <= n (got k={args.k}, n={args.n})")
    m = args.m if args.m is not None else round(4.26 * args.n)
    if m < 0:
        raise CliError("clause count -m must be nonnegative")
    formula = generate_random_ksat(args.n, m, args.k, _seed(args))
    text = f"c random {args.k}-SAT n={args.n} m={m} seed={args.seed}\n" + serialize_dimacs(formula)
    _emit(text, args.output)
    return 0


def _solve_config(args, seed: int):
    schedule = EndpointExponential(args.t_start, args.t_final, args.max_iterations)
    if args.engine == "eda":
        return EdaConfig(
            max_iterations=args.max_iterations,
            schedule=schedule,
            tabu_size=args.tabu_size,
            estimator=EntropyEstimator(args.estimator),
            theta0=args.theta0,
            theta_decay=args.theta_decay,
            entropy_weight=args.entropy_weight,
            seed=seed,
        )
    return BaselineConfig(
        max_iterations=args.max_iterations, schedule=schedule, seed=seed, restarts=args.restarts
    )


def cmd_solve(args) -> int:
    formula = read_dimacs(args.file)
    try:
        config = _solve_config(args, _seed(args))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    runner = {"eda": _run_eda, "sa": run_sa, "hc": run_hill_climb}[args.engine]
    res = runner(formula, config)
    lines = [
        f"c engine {args.engine}",
        f"c seed {args.seed}",
        f"c iterations {res.iterations_used}",
        f"c best_energy {res.best_energy}",
        f"c accepts {res.accept_count} rejects {res.reject_count}",
        "s SATISFIABLE" if res.solved else "s UNKNOWN",
    ]
    if res.solved:
        lines.append("v " + " ".join(map(str, assignment_to_literals(res.witness))) + " 0")
    _emit("\n".join(lines) + "\n", args.output)
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["iteration", "energy", "entropy", "temperature"])
            for p in res.energy_trace:
                w.writerow([p.iteration, p.energy, repr(p.entropy), repr(p.temperature)])
    return EXIT_SAT if res.solved else EXIT_UNKNOWN


def _run_eda(formula, config):
    return run_eda(formula, config, progress=lambda i, e: log.info("iteration %d energy %d", i, e))


def cmd_profile(args) -> int:
    formula = read_dimacs(args.file)
    if formula.num_vars > args.limit:
        raise CliError(
            f"{args.file}: {formula.num_vars} variables exceeds the enumeration limit of {args.limit}"
        )
    report = profile(formula, limit=args.limit, landscape_limit=args.landscape_limit)
    _emit(report.to_json(), args.output)
    return 0


def cmd_bench(args) -> int:
    try:
        plan = bench_mod.BenchPlan.load(args.plan)
    except bench_mod.BenchPlanError as exc:
        raise CliError(str(exc)) from None
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read plan {args.plan}: {exc}") from None
    if args.seed is not None:
        plan.seed = args.seed
    stem = Path(args.output) if args.output else None
    csv_path = plan.csv_path and Path(plan.base_dir) / plan.csv_path
    json_path = plan.json_path and Path(plan.base_dir) / plan.json_path
    if stem is not None:
        csv_path, json_path = stem.with_suffix(".csv"), stem.with_suffix(".json")
    if csv_path is None or json_path is None:
        raise CliError("bench needs output paths: set csv_path/json_path in the plan or pass -o")
    report = bench_mod.run_bench(plan)
    for p in (csv_path, json_path):
        Path(p).parent.mkdir(parents=True, exist_ok=True)
    bench_mod.write_report(report, csv_path, "csv")
    bench_mod.write_report(report, json_path, "json")
    for err in report.errors:
        log.error("instance %s: %s", err["instance_id"], err["error"])
    if not report.rows and report.errors:
        return 1
    return 0


def _positive_float(text: str) -> float:
    x = float(text)
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (random and logged if omitted)")
    common.add_argument("-o", "--output", default=None, help="output path (stdout if omitted)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="edasat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a random k-SAT instance")
    p.add_argument("-n", type=int, required=True, help="variables")
    p.add_argument("-m", type=int, default=None, help="clauses (default round(4.26 n))")
    p.add_argument("-k", type=int, default=3, help="clause width")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", parents=[common], help="run a solver on a DIMACS file")
    p.add_argument("file")
    p.add_argument("--engine", choices=("eda", "sa", "hc"), default="eda")
    p.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
    p.add_argument("--t-start", type=_positive_float, default=DEFAULT_T_START)
    p.add_argument("--t-final", type=_positive_float, default=DEFAULT_T_FINAL)
    p.add_argument("--tabu-size", type=int, default=EdaConfig.tabu_size)
    p.add_argument("--estimator", choices=[e.value for e in EntropyEstimator], default="clause")
    p.add_argument("--theta0", type=float, default=EdaConfig.theta0)
    p.add_argument("--theta-decay", type=float, default=EdaConfig.theta_decay)
    p.add_argument("--entropy-weight", type=float, default=EdaConfig.entropy_weight)
    p.add_argument("--restarts", type=int, default=BaselineConfig.restarts, help="hill climbing only")
    p.add_argument("--trace", default=None, help="write the energy trace as CSV")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("profile", parents=[common], help="exact landscape report for a small instance")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=ENUMERATION_LIMIT, help="max variables to enumerate")
    p.add_argument("--landscape-limit", type=int, default=LANDSCAPE_LIMIT,
                   help="max variables for barrier/ruggedness computation")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("bench", parents=[common], help="run a JSON bench plan")
    p.add_argument("plan")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="c %(levelname)s %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return args.func(args)
    except CliError as exc:
        parser.print_usage(sys.stderr)
        print(f"edasat {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"edasat {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
