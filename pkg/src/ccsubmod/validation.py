"""Desk-scale ground truth: exhaustive optima and structural checkers.

Exhaustive search is capped at 25 elements. The surrogate-constrained
search walks subsets depth-first in lexicographic order and prunes any
branch whose prefix already exceeds the budget (the surrogate only grows
under insertion), so the tie rule "lexicographically smallest maximal
set" falls out of visit order. The deterministic optimum fixes the
solution size at floor(B); for additive objectives it is solved exactly
at any n by sorting values.
"""

import itertools
import math
from dataclasses import dataclass, field

from . import rngstream
from .algorithms import Strategy, run_ga, run_gga, run_ggma
from .chance import ChanceParams
from .errors import GuardError
from .oracles import LinearOracle

ENUMERATION_LIMIT = 25

# Conservative floor shared by both ratio-based strategy-II guarantees.
APPROX_FLOOR = 0.5 * (1.0 - 1.0 / math.e)


@dataclass
class ValidationReport:
    opt_surrogate_value: float
    opt_surrogate_set: tuple[int, ...]
    opt_det_value: float
    algorithm_ratios: dict[tuple[str, str], float]
    property_failures: list[tuple[str, str]] = field(default_factory=list)


def _guard(n: int) -> None:
    if n > ENUMERATION_LIMIT:
        raise GuardError(f"refusing exhaustive enumeration for n={n} > {ENUMERATION_LIMIT}")


def brute_force_surrogate_opt(instance, oracle, params: ChanceParams) -> tuple[tuple[int, ...], float]:
    """Objective-maximizing surrogate-feasible subset by full enumeration."""
    _guard(instance.n)
    ids = list(instance.ids())
    deltas = [instance.delta(v) for v in ids]
    kappa, budget = params.kappa, params.budget
    n = len(ids)
    best_set: tuple[int, ...] = ()
    best_value = 0.0
    members: list[int] = []

    def visit(start: int, ew: float, dss: float, tracker) -> None:
        nonlocal best_set, best_value
        for j in range(start, n):
            gamma_new = (ew + 1.0) + kappa * math.sqrt((dss + deltas[j] * deltas[j]) / 3.0)
            if gamma_new > budget:
                continue
            grown = tracker.copy()
            grown.add(ids[j])
            members.append(ids[j])
            if grown.value > best_value:
                best_set = tuple(members)
                best_value = grown.value
            visit(j + 1, ew + 1.0, dss + deltas[j] * deltas[j], grown)
            members.pop()

    visit(0, 0.0, 0.0, oracle.tracker())
    if not best_set:
        return (), 0.0
    return best_set, float(oracle.eval(best_set))


def brute_force_deterministic_opt(instance, oracle, params: ChanceParams) -> tuple[tuple[int, ...], float]:
    """Best floor(B)-size subset of the deterministic relaxation (weights = 1)."""
    size = min(int(math.floor(params.budget)), instance.n)
    if size == 0:
        return (), 0.0
    if isinstance(oracle, LinearOracle):
        ranked = sorted(instance.ids(), key=lambda v: (-oracle.values[v], v))
        chosen = tuple(sorted(ranked[:size]))
        return chosen, float(oracle.eval(chosen))
    _guard(instance.n)
    best_set: tuple[int, ...] = ()
    best_value = -math.inf
    for combo in itertools.combinations(instance.ids(), size):
        value = oracle.eval(combo)
        if value > best_value:
            best_set, best_value = combo, value
    return best_set, float(best_value)


ALGORITHM_KEYS = (("ga", "-"), ("gga", "s1"), ("gga", "s2"), ("ggma", "s1"), ("ggma", "s2"))


def run_algorithm(name: str, instance, oracle, params: ChanceParams, strategy_tag: str = "-"):
    """Dispatch by (name, strategy tag) as used in reports and the CLI."""
    if name == "ga":
        return run_ga(instance, oracle, params)
    strategy = Strategy(strategy_tag)
    if name == "gga":
        return run_gga(instance, oracle, params, strategy)
    if name == "ggma":
        return run_ggma(instance, oracle, params, strategy)
    raise ValueError(f"unknown algorithm {name!r}")


def check_theorem_bounds(instance, oracle, params: ChanceParams) -> ValidationReport:
    """Run all five algorithm-strategy pairs against the exhaustive optima.

    Asserts (as recorded failures, never exceptions) that both strategy-II
    algorithms reach the conservative floor (1/2)(1 - 1/e) of the
    deterministic optimum; strategy-I and plain-greedy ratios are reported
    without assertion.
    """
    opt_s_set, opt_s_value = brute_force_surrogate_opt(instance, oracle, params)
    _, opt_d_value = brute_force_deterministic_opt(instance, oracle, params)
    ratios: dict[tuple[str, str], float] = {}
    failures: list[tuple[str, str]] = []
    for name, tag in ALGORITHM_KEYS:
        result = run_algorithm(name, instance, oracle, params, tag)
        value = float(result.objective)
        ratios[(name, tag)] = value / opt_d_value if opt_d_value > 0 else 0.0
        if tag == "s2" and value < APPROX_FLOOR * opt_d_value:
            failures.append(
                (
                    f"{name}-s2 floor",
                    f"f={value} < {APPROX_FLOOR} * opt_d={opt_d_value} (solution {result.solution})",
                )
            )
    return ValidationReport(
        opt_surrogate_value=opt_s_value,
        opt_surrogate_set=opt_s_set,
        opt_det_value=opt_d_value,
        algorithm_ratios=ratios,
        property_failures=failures,
    )


@dataclass
class AxiomReport:
    trials: int
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_oracle_axioms(oracle, universe, trials: int, seed: int, tol: float = 1e-9) -> AxiomReport:
    """Sample (S subset of T, v not in T) triples; report axiom violations.

    Checks monotonicity eval(S) <= eval(T) and the diminishing-returns
    inequality marginal(v, S) >= marginal(v, T), with a tiny absolute
    tolerance for non-integer-valued oracles.
    """
    universe = list(universe)
    if trials < 1 or len(universe) < 1:
        raise GuardError("need at least one trial and a non-empty universe")
    rng = rngstream.substream(seed, rngstream.AXIOM_TRIPLES)
    report = AxiomReport(trials=trials)
    for _ in range(trials):
        perm = rng.permutation(len(universe))
        t_size = int(rng.integers(0, len(universe)))  # leaves room for v
        big = sorted(universe[i] for i in perm[:t_size])
        v = universe[perm[t_size]]
        small = sorted(universe[i] for i in perm[: int(rng.integers(0, t_size + 1))])
        f_small, f_big = oracle.eval(small), oracle.eval(big)
        if f_small > f_big + tol:
            report.violations.append(("monotonicity", f"S={small} T={big}: {f_small} > {f_big}"))
        m_small, m_big = oracle.marginal(v, small), oracle.marginal(v, big)
        if m_small + tol < m_big:
            report.violations.append(
                ("submodularity", f"v={v} S={small} T={big}: {m_small} < {m_big}")
            )
    return report


def random_coverage_instances(count: int, n: int, edge_prob: float, budgets, alphas, seed: int = 0):
    """Seeded stream of (instance, oracle, params) coverage triples for floors."""
    from .graphio import random_gnp_graph
    from .instances import build_random_instance
    from .oracles import CoverageOracle

    budgets = list(budgets)
    alphas = list(alphas)
    for i in range(count):
        graph = random_gnp_graph(n, edge_prob, seed=seed + i)
        budget = budgets[i % len(budgets)]
        alpha = alphas[i % len(alphas)]
        instance = build_random_instance(n, budget, alpha, seed=seed + 10_000 + i)
        yield instance, CoverageOracle(graph), instance.params()
