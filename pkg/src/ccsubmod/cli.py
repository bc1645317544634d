"""Command line driver: gen / solve / validate / oracle / experiment.

Exit codes: 0 success, 2 usage or parameter errors, 3 unreadable files.
Experiment CSVs are byte-identical across reruns and parallelism levels:
all randomness is seed-derived, rows are emitted in a fixed sort order,
and runtime_ms is written as 0 unless --timings real is requested (real
timings would break reproducibility of the file).
"""

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from . import graphio
from .chance import ChanceParams, mc_violation_estimate, single_violation_prob, surrogate_weight
from .errors import CcsubmodError
from .instances import (
    I1Params,
    I2Params,
    Instance,
    build_i1,
    build_i2,
    build_random_instance,
    instance_from_dispersions,
    read_instance,
    write_instance,
)
from .oracles import CoverageOracle, build_live_edge_samples
from .validation import brute_force_deterministic_opt, check_theorem_bounds, run_algorithm

ALGORITHMS = ("ga", "gga", "ggma")
STRATEGIES = ("s1", "s2")
PROBLEMS = ("mcp", "imp")
DISPERSIONS = ("uniform", "degree")


@dataclass(frozen=True)
class RunRecord:
    """One experiment outcome row; field order is the CSV schema."""

    problem: str
    graph: str
    algorithm: str
    strategy: str
    B: float
    alpha: float
    dispersion_mode: str
    seed: int
    f_value: float
    solution_size: int
    surrogate: float
    runtime_ms: int
    mc_violation_rate: float


CSV_HEADER = ",".join(f.name for f in fields(RunRecord))


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def csv_row(record: RunRecord) -> str:
    return ",".join(_fmt(getattr(record, f.name)) for f in fields(RunRecord))


def sort_key(record: RunRecord):
    return (record.graph, record.B, record.alpha, record.algorithm, record.strategy, record.seed)


class UsageError(CcsubmodError):
    pass


def _parse_list(text: str, flag: str, convert):
    try:
        return [convert(token) for token in text.split(",")]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated values, got {text!r}") from None


def _check_record(record: RunRecord, result, instance) -> None:
    """Abort on surrogate-overdrawn rows unless covered by the exact singleton rule."""
    if record.surrogate <= record.B:
        return
    if result.swapped_singleton is not None:
        delta = instance.delta(result.swapped_singleton)
        if single_violation_prob(delta, record.B) <= record.alpha:
            return
    raise RuntimeError(
        f"internal error: emitted solution exceeds the surrogate budget "
        f"({record.surrogate} > {record.B}) without an exact-feasibility certificate"
    )


def _build_graph_problem(graph_path, fmt, problem, budget, alpha, dispersion, seed, ic_prob, ic_samples):
    graph = graphio.parse_graph(graph_path, fmt)
    if dispersion == "uniform":
        instance = build_random_instance(graph.node_count, budget, alpha, seed)
    else:
        instance = instance_from_dispersions(graphio.degree_dispersions(graph), budget, alpha)
    if problem == "mcp":
        oracle = CoverageOracle(graph)
    else:
        oracle = build_live_edge_samples(graph, ic_prob, ic_samples, seed)
    return instance, oracle


def _run_cell(problem, graph_name, algorithm, strategy_tag, instance, oracle, seed,
              dispersion_mode, mc_samples, real_timing) -> RunRecord:
    params = instance.params()
    started = time.perf_counter()
    result = run_algorithm(algorithm, instance, oracle, params, strategy_tag)
    elapsed_ms = int(round(1000.0 * (time.perf_counter() - started)))
    rate = mc_violation_estimate(result.solution, instance, params, mc_samples, seed) if mc_samples else 0.0
    record = RunRecord(
        problem=problem,
        graph=graph_name,
        algorithm=algorithm,
        strategy=strategy_tag,
        B=float(instance.budget),
        alpha=float(instance.alpha),
        dispersion_mode=dispersion_mode,
        seed=seed,
        f_value=float(result.objective),
        solution_size=len(result.solution),
        surrogate=float(result.surrogate),
        runtime_ms=elapsed_ms if real_timing else 0,
        mc_violation_rate=rate,
    )
    _check_record(record, result, instance)
    return record


def _algo_pairs(algorithms, strategies):
    pairs = []
    for algorithm in algorithms:
        if algorithm == "ga":
            pairs.append(("ga", "-"))
        else:
            pairs.extend((algorithm, s) for s in strategies)
    return pairs


def cmd_solve(args) -> int:
    if bool(args.instance) == bool(args.graph):
        raise UsageError("exactly one of --instance or --graph is required")
    if args.algorithm == "ga" and args.strategy:
        raise UsageError("--strategy does not apply to ga")
    if args.algorithm != "ga" and not args.strategy:
        raise UsageError(f"--strategy is required for {args.algorithm}")
    strategy_tag = args.strategy or "-"
    seed = args.seed

    if args.instance:
        instance = read_instance(args.instance)
        if args.budget is not None or args.alpha is not None:
            instance = Instance(
                elements=instance.elements,
                budget=args.budget if args.budget is not None else instance.budget,
                alpha=args.alpha if args.alpha is not None else instance.alpha,
                values=instance.values,
            )
        oracle = instance.linear_oracle()
        problem, graph_name, dispersion_mode = "linear", "-", "file"
    else:
        if args.budget is None or args.alpha is None:
            raise UsageError("--budget and --alpha are required with --graph")
        if not args.problem:
            raise UsageError("--problem is required with --graph")
        instance, oracle = _build_graph_problem(
            args.graph, args.format, args.problem, args.budget, args.alpha,
            args.dispersion, seed, args.ic_prob, args.ic_samples,
        )
        problem, graph_name, dispersion_mode = args.problem, Path(args.graph).stem, args.dispersion

    record = _run_cell(problem, graph_name, args.algorithm, strategy_tag, instance, oracle,
                       seed, dispersion_mode, args.mc_samples, real_timing=True)
    print(CSV_HEADER)
    print(csv_row(record))
    return 0


def _experiment_unit(payload) -> list[RunRecord]:
    """All rows for one dispersion seed; runs in a worker process."""
    instance_cache: dict[tuple[float, float], object] = {}
    graph = graphio.parse_graph(payload["graph_path"], payload["format"])
    seed = payload["seed"]
    if payload["dispersion"] == "degree":
        deltas = graphio.degree_dispersions(graph)
    if payload["problem"] == "mcp":
        oracle = CoverageOracle(graph)
    else:
        oracle = build_live_edge_samples(graph, payload["ic_prob"], payload["ic_samples"], seed)
    rows = []
    for budget in payload["budgets"]:
        for alpha in payload["alphas"]:
            key = (budget, alpha)
            if key not in instance_cache:
                if payload["dispersion"] == "uniform":
                    instance_cache[key] = build_random_instance(graph.node_count, budget, alpha, seed)
                else:
                    instance_cache[key] = instance_from_dispersions(deltas, budget, alpha)
            instance = instance_cache[key]
            for algorithm, tag in payload["pairs"]:
                rows.append(
                    _run_cell(
                        payload["problem"], payload["graph_name"], algorithm, tag,
                        instance, oracle, seed, payload["dispersion"],
                        payload["mc_samples"], payload["timings"] == "real",
                    )
                )
    return rows


def cmd_experiment(args) -> int:
    budgets = _parse_list(args.budgets, "--budgets", float)
    alphas = _parse_list(args.alphas, "--alphas", float)
    algorithms = args.algorithms.split(",")
    strategies = args.strategies.split(",")
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {algorithm!r}")
    for strategy in strategies:
        if strategy not in STRATEGIES:
            raise UsageError(f"unknown strategy {strategy!r}")
    seeds = [0] if args.dispersion == "degree" else _parse_list(args.seeds, "--seeds", int)
    pairs = _algo_pairs(algorithms, strategies)
    units = [
        {
            "graph_path": args.graph,
            "graph_name": Path(args.graph).stem,
            "format": args.format,
            "problem": args.problem,
            "dispersion": args.dispersion,
            "seed": seed,
            "budgets": budgets,
            "alphas": alphas,
            "pairs": pairs,
            "mc_samples": args.mc_samples,
            "ic_prob": args.ic_prob,
            "ic_samples": args.ic_samples,
            "timings": args.timings,
        }
        for seed in seeds
    ]
    if args.jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_experiment_unit, units))
    else:
        results = [_experiment_unit(u) for u in units]
    rows = sorted((r for unit in results for r in unit), key=sort_key)
    out = Path(args.out)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for record in rows:
            fh.write(csv_row(record) + "\n")
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_validate(args) -> int:
    instance = read_instance(args.instance)
    params = instance.params()
    members = _parse_list(args.members, "--members", int) if args.members else []
    state = _state_of(members, instance, params)
    gamma = surrogate_weight(state, params)
    rate = mc_violation_estimate(members, instance, params, args.mc_samples, args.seed)
    print(f"surrogate {_fmt(gamma)}")
    print(f"budget {_fmt(float(instance.budget))}")
    print(f"surrogate_feasible {'true' if gamma <= params.budget else 'false'}")
    print(f"mc_violation_rate {_fmt(rate)}")
    print(f"mc_samples {args.mc_samples}")
    return 0


def _state_of(members, instance, params):
    from .chance import SelectionState

    state = SelectionState()
    for v in members:
        state.insert(instance.element(v), params)
    return state


def cmd_oracle(args) -> int:
    instance = read_instance(args.instance)
    oracle = instance.linear_oracle()
    params = instance.params()
    report = check_theorem_bounds(instance, oracle, params)
    opt_d_set, _ = brute_force_deterministic_opt(instance, oracle, params)
    print(f"opt_surrogate_value {_fmt(report.opt_surrogate_value)}")
    print(f"opt_surrogate_set {','.join(map(str, report.opt_surrogate_set))}")
    print(f"opt_det_value {_fmt(report.opt_det_value)}")
    print(f"opt_det_set {','.join(map(str, opt_d_set))}")
    for (name, tag), ratio in sorted(report.algorithm_ratios.items()):
        print(f"ratio {name} {tag} {_fmt(ratio)}")
    failed = {name for name, _ in report.property_failures}
    for name in ("gga-s2 floor", "ggma-s2 floor"):
        print(f"floor {name.split()[0]} {'fail' if name in failed else 'pass'}")
    print(f"property_failures {len(report.property_failures)}")
    for name, witness in report.property_failures:
        print(f"failure {name}: {witness}")
    return 0


def cmd_gen(args) -> int:
    if args.family == "i1":
        if args.budget is None or args.gamma is None:
            raise UsageError("gen --family i1 requires --B and --gamma")
        if not float(args.budget).is_integer():
            raise UsageError("i1 budget must be an integer")
        instance, _ = build_i1(I1Params(budget=int(args.budget), gamma=args.gamma, n=args.n, alpha=args.alpha))
    elif args.family == "i2":
        if args.epsilon is None or args.gamma is None or args.beta is None or args.alpha is None:
            raise UsageError("gen --family i2 requires --epsilon, --gamma, --beta and --alpha")
        instance, _ = build_i2(I2Params(epsilon=args.epsilon, alpha=args.alpha, gamma=args.gamma, beta=args.beta, n=args.n))
    else:
        if args.n is None or args.budget is None or args.alpha is None:
            raise UsageError("gen --family random requires --n, --B and --alpha")
        instance = build_random_instance(args.n, args.budget, args.alpha, args.seed)
    write_instance(instance, args.out)
    print(f"wrote {args.family} instance with n={instance.n} to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccsubmod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--mc-samples", type=int, default=100_000)

    p_solve = sub.add_parser("solve", help="run one algorithm on one instance or graph")
    p_solve.add_argument("--instance")
    p_solve.add_argument("--graph")
    p_solve.add_argument("--format", choices=graphio.FORMATS, default="edgelist")
    p_solve.add_argument("--problem", choices=PROBLEMS)
    p_solve.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    p_solve.add_argument("--strategy", choices=STRATEGIES)
    p_solve.add_argument("--budget", type=float)
    p_solve.add_argument("--alpha", type=float)
    p_solve.add_argument("--dispersion", choices=DISPERSIONS, default="uniform")
    p_solve.add_argument("--ic-prob", type=float, default=0.05)
    p_solve.add_argument("--ic-samples", type=int, default=100)
    add_common(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_exp = sub.add_parser("experiment", help="run a (B, alpha, seed) grid and write a CSV")
    p_exp.add_argument("--graph", required=True)
    p_exp.add_argument("--format", choices=graphio.FORMATS, default="edgelist")
    p_exp.add_argument("--problem", choices=PROBLEMS, required=True)
    p_exp.add_argument("--budgets", required=True, help="comma-separated budgets")
    p_exp.add_argument("--alphas", required=True, help="comma-separated tolerances")
    p_exp.add_argument("--seeds", default="0,1,2,3,4", help="comma-separated dispersion seeds")
    p_exp.add_argument("--algorithms", default="ga,gga,ggma")
    p_exp.add_argument("--strategies", default="s1,s2")
    p_exp.add_argument("--dispersion", choices=DISPERSIONS, default="uniform")
    p_exp.add_argument("--ic-prob", type=float, default=0.05)
    p_exp.add_argument("--ic-samples", type=int, default=100)
    p_exp.add_argument("--jobs", type=int, default=1)
    p_exp.add_argument("--timings", choices=("zero", "real"), default="zero")
    p_exp.add_argument("--out", required=True)
    p_exp.add_argument("--mc-samples", type=int, default=100_000)
    p_exp.set_defaults(func=cmd_experiment)

    p_val = sub.add_parser("validate", help="surrogate and Monte-Carlo check of a given solution")
    p_val.add_argument("--instance", required=True)
    p_val.add_argument("--members", required=True, help="comma-separated element ids")
    add_common(p_val)
    p_val.set_defaults(func=cmd_validate)

    p_orc = sub.add_parser("oracle", help="exhaustive optima and guarantee report (n <= 25)")
    p_orc.add_argument("--instance", required=True)
    p_orc.set_defaults(func=cmd_oracle)

    p_gen = sub.add_parser("gen", help="write an instance file")
    p_gen.add_argument("--family", choices=("i1", "i2", "random"), required=True)
    p_gen.add_argument("--B", "--budget", dest="budget", type=float)
    p_gen.add_argument("--gamma", type=float)
    p_gen.add_argument("--beta", type=float)
    p_gen.add_argument("--epsilon", type=int)
    p_gen.add_argument("--alpha", type=float)
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CcsubmodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
