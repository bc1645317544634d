"""Probabilistic weight model and the one-sided-Chebyshev surrogate.

Each element carries a random weight drawn uniformly from [1 - delta,
1 + delta], so E[w] = 1 and Var[w] = delta^2 / 3. For a solution S the
surrogate weight

    Gamma(S) = |S| + kappa_alpha * sqrt(sum_i delta_i^2 / 3),
    kappa_alpha = sqrt((1 - alpha) / alpha),

is a sufficient certificate for the chance constraint Pr[W(S) > B] <= alpha
by the one-sided Chebyshev inequality. Gamma(S union {v}) is always
computed through the single canonical formula in `candidate_surrogate`, so
feasibility decisions are bit-identical across scalar and vectorized code
paths.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import rngstream
from .errors import ParameterError


def kappa(alpha: float) -> float:
    """Chebyshev scaling factor sqrt((1 - alpha) / alpha); decreasing in alpha."""
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    return math.sqrt((1.0 - alpha) / alpha)


@dataclass(frozen=True)
class ChanceParams:
    """Budget B, violation tolerance alpha, and the cached kappa_alpha."""

    alpha: float
    budget: float
    kappa: float = field(init=False)

    def __post_init__(self):
        if not self.budget > 1.0:
            raise ParameterError(f"budget must exceed 1, got {self.budget}")
        object.__setattr__(self, "kappa", kappa(self.alpha))


@dataclass(frozen=True)
class Element:
    """One selectable item: an id and its dispersion (uniform half-width)."""

    id: int
    delta: float

    def __post_init__(self):
        if self.id < 0:
            raise ParameterError(f"element id must be non-negative, got {self.id}")
        if not 0.0 <= self.delta <= 1.0:
            raise ParameterError(f"delta must lie in [0, 1], got {self.delta}")


class SelectionState:
    """A partial solution with incrementally maintained weight statistics.

    Tracks members in insertion order plus expected weight (= member
    count), the sum of squared dispersions, its /3 variance, and the
    surrogate weight. The surrogate is recomputed from the running sums at
    every insertion rather than accumulated from gains, which keeps it
    bit-identical to `candidate_surrogate` of the inserted element.
    """

    __slots__ = ("members", "expected_weight", "dispersion_sq_sum", "variance", "surrogate", "_ids")

    def __init__(self):
        self.members: list[int] = []
        self.expected_weight = 0.0
        self.dispersion_sq_sum = 0.0
        self.variance = 0.0
        self.surrogate = 0.0
        self._ids: set[int] = set()

    def __contains__(self, element_id: int) -> bool:
        return element_id in self._ids

    def __len__(self) -> int:
        return len(self.members)

    def insert(self, element: Element, params: ChanceParams) -> None:
        if element.id in self._ids:
            raise ValueError(f"element {element.id} already selected")
        self.members.append(element.id)
        self._ids.add(element.id)
        self.expected_weight = self.expected_weight + 1.0
        self.dispersion_sq_sum = self.dispersion_sq_sum + element.delta * element.delta
        self.variance = self.dispersion_sq_sum / 3.0
        self.surrogate = self.expected_weight + params.kappa * math.sqrt(self.variance)


def surrogate_weight(state: SelectionState, params: ChanceParams) -> float:
    """Gamma(S) = |S| + kappa * sqrt(variance); 0 for the empty state."""
    return state.expected_weight + params.kappa * math.sqrt(state.variance)


def candidate_surrogate(state: SelectionState, delta: float, params: ChanceParams) -> float:
    """Gamma(S union {v}) for a candidate with the given dispersion.

    Canonical form used by every feasibility check; matches the state's
    cached surrogate bit-for-bit once the candidate is inserted.
    """
    return (state.expected_weight + 1.0) + params.kappa * math.sqrt(
        (state.dispersion_sq_sum + delta * delta) / 3.0
    )


def candidate_surrogate_vec(state: SelectionState, deltas: np.ndarray, params: ChanceParams) -> np.ndarray:
    """Vectorized `candidate_surrogate`; same operation order, same bits."""
    return (state.expected_weight + 1.0) + params.kappa * np.sqrt(
        (state.dispersion_sq_sum + deltas * deltas) / 3.0
    )


def surrogate_gain(state: SelectionState, element: Element, params: ChanceParams) -> float:
    """Gamma(S union {v}) - Gamma(S) = 1 + kappa*(sqrt(Var + d^2/3) - sqrt(Var)).

    Always >= 1 because adding an element raises the expected weight by one
    and never lowers the variance.
    """
    if element.id in state:
        raise ValueError(f"element {element.id} already selected")
    new_variance = (state.dispersion_sq_sum + element.delta * element.delta) / 3.0
    return 1.0 + params.kappa * (math.sqrt(new_variance) - math.sqrt(state.variance))


def surrogate_gain_vec(state: SelectionState, deltas: np.ndarray, params: ChanceParams) -> np.ndarray:
    """Vectorized `surrogate_gain` over candidate dispersions."""
    new_variance = (state.dispersion_sq_sum + deltas * deltas) / 3.0
    return 1.0 + params.kappa * (np.sqrt(new_variance) - math.sqrt(state.variance))


def is_surrogate_feasible(state: SelectionState, params: ChanceParams) -> bool:
    """True iff Gamma(S) <= B; equality counts as feasible."""
    return surrogate_weight(state, params) <= params.budget


def single_violation_prob(delta: float, budget: float) -> float:
    """Exact Pr[w > B] for one element, w uniform on [1 - delta, 1 + delta]."""
    if not 0.0 <= delta <= 1.0:
        raise ParameterError(f"delta must lie in [0, 1], got {delta}")
    if not budget > 1.0:
        raise ParameterError(f"budget must exceed 1, got {budget}")
    if delta == 0.0 or budget >= 1.0 + delta:
        return 0.0
    return min(1.0, max(0.0, (1.0 + delta - budget) / (2.0 * delta)))


def mc_violation_estimate(members, instance, params: ChanceParams, samples: int, seed: int) -> float:
    """Monte-Carlo estimate of Pr[W(S) > B] over `samples` trials.

    Weight draws come from one Philox stream per (seed, element id), so the
    estimate is a pure function of (members, seed, samples) regardless of
    iteration order or parallel scheduling. Exceeding the budget strictly
    counts as a violation.
    """
    if samples < 1:
        raise ParameterError(f"samples must be >= 1, got {samples}")
    ids = sorted(set(members))
    totals = np.zeros(samples, dtype=np.float64)
    for element_id in ids:
        delta = instance.delta(element_id)
        u = rngstream.substream(seed, rngstream.MC_WEIGHT, element_id).random(samples)
        totals += (1.0 - delta) + (2.0 * delta) * u
    return int(np.count_nonzero(totals > params.budget)) / samples
