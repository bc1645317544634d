"""Greedy solvers for the chance-constrained submodular knapsack.

Three deterministic algorithms share one candidate-scan core:

* run_ga: plain greedy. Pick the largest marginal gain among the
  remaining candidates, keep it only if the surrogate stays within
  budget, discard it from the pool either way.
* run_gga: generalized greedy. Rank by marginal gain divided by a
  strategy denominator, same accept/discard rule, then fall back to the
  best single element whose exact violation probability is within
  tolerance if that single element scores higher.
* run_ggma: generalized greedy plus max. Restrict the pool to candidates
  that still fit, remember the best one-element augmentation of the
  current prefix seen so far, and grow the prefix by the best ratio.

Tie-breaking is fixed everywhere: maximize the ranking criterion, break
ties by larger objective gain, then by smallest element id. Marginal
gains are cached per solution prefix (rejections do not change the
prefix, so rejection-heavy scans cost one oracle pass per accepted
element). GA and GGA stop scanning once not even a zero-dispersion
element could fit; `early_stop=False` forces the literal full sweep,
which provably returns the same solution and is covered by a test.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .chance import (
    ChanceParams,
    SelectionState,
    candidate_surrogate,
    candidate_surrogate_vec,
    single_violation_prob,
    surrogate_gain_vec,
    surrogate_weight,
)


class Strategy(Enum):
    """Denominator choice for the ratio-based algorithms."""

    DISPERSION_SUM = "s1"
    SURROGATE_WEIGHT = "s2"

    def denominators(self, state: SelectionState, deltas: np.ndarray, params: ChanceParams) -> np.ndarray:
        if self is Strategy.DISPERSION_SUM:
            return deltas * deltas
        return surrogate_gain_vec(state, deltas, params)

    def denominator(self, state: SelectionState, delta: float, params: ChanceParams) -> float:
        return float(self.denominators(state, np.array([delta]), params)[0])


@dataclass(frozen=True)
class TraceStep:
    """One scan decision: the chosen candidate and whether it was kept."""

    step: int
    chosen: int
    f_gain: float
    denominator: float | None
    surrogate_after: float
    accepted: bool


@dataclass(frozen=True)
class GreedyResult:
    solution: tuple[int, ...]
    objective: float
    surrogate: float
    trace: tuple[TraceStep, ...]
    swapped_singleton: int | None = None


def _ratios(fgains: np.ndarray, dens: np.ndarray) -> np.ndarray:
    """Ranking ratios with the zero conventions.

    Zero objective gain ranks as 0 regardless of the denominator (0/0
    included); positive gain over a zero denominator ranks as +inf.
    """
    out = np.zeros_like(fgains)
    pos = fgains > 0.0
    zero_den = dens == 0.0
    out[pos & zero_den] = np.inf
    rest = pos & ~zero_den
    out[rest] = fgains[rest] / dens[rest]
    return out


def _argbest(primary: np.ndarray, fgains: np.ndarray, ids: np.ndarray) -> int:
    """Index of the maximal primary value; ties by larger f-gain, then smallest id."""
    best = np.flatnonzero(primary == primary.max())
    if best.size > 1:
        g = fgains[best]
        best = best[np.flatnonzero(g == g.max())]
        if best.size > 1:
            return int(best[np.argmin(ids[best])])
    return int(best[0])


def _solution_surrogate(solution, instance, params: ChanceParams) -> float:
    state = SelectionState()
    for v in solution:
        state.insert(instance.element(v), params)
    return surrogate_weight(state, params)


def _finalize(solution, instance, oracle, params, trace, swapped=None) -> GreedyResult:
    return GreedyResult(
        solution=tuple(solution),
        objective=oracle.eval(solution),
        surrogate=_solution_surrogate(solution, instance, params),
        trace=tuple(trace),
        swapped_singleton=swapped,
    )


def _candidate_arrays(instance):
    ids = np.array(sorted(i for i in instance.ids()), dtype=np.int64)
    deltas = np.array([instance.delta(int(i)) for i in ids], dtype=np.float64)
    return ids, deltas


def _no_candidate_fits(state: SelectionState, params: ChanceParams) -> bool:
    # Surrogate gain is at least 1, so once a zero-dispersion element would
    # not fit, nothing ever will again.
    return candidate_surrogate(state, 0.0, params) > params.budget


def _greedy_sweep(instance, oracle, params, strategy, early_stop):
    """Shared GA/GGA loop; strategy None ranks by plain f-gain."""
    state = SelectionState()
    tracker = oracle.tracker()
    ids, deltas = _candidate_arrays(instance)
    fgains = tracker.gains(ids)
    solution: list[int] = []
    trace: list[TraceStep] = []
    step = 0
    while ids.size:
        if early_stop and _no_candidate_fits(state, params):
            break
        if strategy is None:
            dens = None
            j = _argbest(fgains, fgains, ids)
        else:
            dens = strategy.denominators(state, deltas, params)
            j = _argbest(_ratios(fgains, dens), fgains, ids)
        chosen = int(ids[j])
        gamma_after = candidate_surrogate(state, float(deltas[j]), params)
        accepted = gamma_after <= params.budget
        step += 1
        trace.append(
            TraceStep(
                step=step,
                chosen=chosen,
                f_gain=float(fgains[j]),
                denominator=None if dens is None else float(dens[j]),
                surrogate_after=gamma_after,
                accepted=accepted,
            )
        )
        if accepted:
            state.insert(instance.element(chosen), params)
            tracker.add(chosen)
            solution.append(chosen)
        keep = np.arange(ids.size) != j
        ids, deltas = ids[keep], deltas[keep]
        fgains = tracker.gains(ids) if accepted else fgains[keep]
    return solution, trace


def run_ga(instance, oracle, params: ChanceParams, *, early_stop: bool = True) -> GreedyResult:
    """Plain greedy by marginal gain with the surrogate-budget accept rule."""
    solution, trace = _greedy_sweep(instance, oracle, params, None, early_stop)
    return _finalize(solution, instance, oracle, params, trace)


def _best_exact_feasible_singleton(instance, oracle, params):
    """Highest-value element whose exact violation probability is within alpha."""
    eligible = [
        v for v in instance.ids() if single_violation_prob(instance.delta(v), params.budget) <= params.alpha
    ]
    if not eligible:
        return None, -math.inf
    ids = np.array(eligible, dtype=np.int64)
    fvals = oracle.tracker().gains(ids)  # eval({v}) since eval(empty) = 0
    j = _argbest(fvals, fvals, ids)
    return int(ids[j]), float(fvals[j])


def run_gga(instance, oracle, params: ChanceParams, strategy: Strategy, *, early_stop: bool = True) -> GreedyResult:
    """Generalized greedy with a final best-single-element comparison.

    The sweep ranks by f-gain over the strategy denominator. Afterwards
    the best single element with exact violation probability <= alpha
    replaces the swept solution only if its value is strictly larger.
    """
    solution, trace = _greedy_sweep(instance, oracle, params, strategy, early_stop)
    result = _finalize(solution, instance, oracle, params, trace)
    singleton, fval = _best_exact_feasible_singleton(instance, oracle, params)
    if singleton is not None and fval > result.objective:
        return _finalize([singleton], instance, oracle, params, trace, swapped=singleton)
    return result


def run_ggma(instance, oracle, params: ChanceParams, strategy: Strategy) -> GreedyResult:
    """Generalized greedy plus max: returns the best augmented prefix.

    Each round restricts the pool to candidates that still fit the
    surrogate budget, tracks the best f(prefix + one candidate) seen, and
    then grows the prefix by the ratio criterion unconditionally (the pool
    is already feasibility-filtered). Stops when the pool empties.
    """
    state = SelectionState()
    tracker = oracle.tracker()
    ids, deltas = _candidate_arrays(instance)
    fgains = tracker.gains(ids)
    trace: list[TraceStep] = []
    prefix: list[int] = []
    best: list[int] = []
    best_value = 0.0
    step = 0
    while ids.size:
        gamma_after = candidate_surrogate_vec(state, deltas, params)
        feasible = np.flatnonzero(gamma_after <= params.budget)
        if feasible.size == 0:
            break
        f_ids, f_deltas, f_gains = ids[feasible], deltas[feasible], fgains[feasible]
        jmax = _argbest(f_gains, f_gains, f_ids)
        augmented_value = tracker.value + float(f_gains[jmax])
        if best_value < augmented_value:
            best = prefix + [int(f_ids[jmax])]
            best_value = augmented_value
        dens = strategy.denominators(state, f_deltas, params)
        j = _argbest(_ratios(f_gains, dens), f_gains, f_ids)
        chosen = int(f_ids[j])
        step += 1
        trace.append(
            TraceStep(
                step=step,
                chosen=chosen,
                f_gain=float(f_gains[j]),
                denominator=float(dens[j]),
                surrogate_after=float(gamma_after[feasible[j]]),
                accepted=True,
            )
        )
        state.insert(instance.element(chosen), params)
        tracker.add(chosen)
        prefix.append(chosen)
        keep = ids != chosen
        ids, deltas = ids[keep], deltas[keep]
        fgains = tracker.gains(ids)
    return _finalize(best, instance, oracle, params, trace)
