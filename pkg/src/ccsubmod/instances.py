"""Problem instances: adversarial families, random dispersions, file format.

An Instance is the chance-constrained problem definition: elements with
dispersions, a budget, a violation tolerance, and (for linear objectives)
optional per-element values. Two adversarial linear families are provided:

* family i1: one high-dispersion element among otherwise deterministic
  unit-value elements, sized so plain greedy grabs the risky element first
  and then nothing else fits.
* family i2: a cheap-uncertainty block of unit values and a
  high-uncertainty block of large values, sized so every epsilon-element
  subset is surrogate-feasible but no larger one is, and so
  dispersion-sum ranking prefers the wrong block.

Both builders verify their structural guarantees numerically and refuse
parameters that break them.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from io import StringIO
from pathlib import Path

import numpy as np

from . import rngstream
from .chance import ChanceParams, Element, SelectionState, candidate_surrogate, surrogate_weight
from .errors import InputError, ParameterError, ParseError
from .oracles import LinearOracle


@dataclass(frozen=True)
class Instance:
    """Elements with dispersions plus the (B, alpha) chance constraint."""

    elements: tuple[Element, ...]
    budget: float
    alpha: float
    values: dict[int, float] | None = None

    def __post_init__(self):
        ids = [e.id for e in self.elements]
        if len(set(ids)) != len(ids):
            raise ParameterError("duplicate element ids")
        if self.values is not None and set(self.values) != set(ids):
            raise ParameterError("values must cover exactly the element ids")

    @cached_property
    def _by_id(self) -> dict[int, Element]:
        return {e.id: e for e in self.elements}

    @property
    def n(self) -> int:
        return len(self.elements)

    def ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._by_id))

    def element(self, element_id: int) -> Element:
        try:
            return self._by_id[element_id]
        except KeyError:
            raise InputError(f"unknown element id {element_id}") from None

    def delta(self, element_id: int) -> float:
        return self.element(element_id).delta

    def params(self) -> ChanceParams:
        return ChanceParams(alpha=self.alpha, budget=self.budget)

    def linear_oracle(self) -> LinearOracle:
        values = self.values if self.values is not None else {i: 1.0 for i in self.ids()}
        return LinearOracle(values)


def instance_from_dispersions(deltas, budget: float, alpha: float, values=None, first_id: int = 0) -> Instance:
    """Instance with ids first_id..first_id+n-1 and the given dispersions."""
    elements = tuple(Element(first_id + i, float(d)) for i, d in enumerate(deltas))
    return Instance(elements=elements, budget=float(budget), alpha=float(alpha), values=values)


@dataclass(frozen=True)
class I1Params:
    """Family i1: budget B >= 3 (integer), gamma in (0, 1], n >= B + 1."""

    budget: int
    gamma: float
    n: int | None = None
    alpha: float | None = None


def i1_alpha_interval(budget: int, gamma: float) -> tuple[float, float]:
    """Admissible alpha range: exactly where Gamma({1}) lands in (B-1, B)."""
    lo = gamma / (gamma + 3.0 * (budget - 1) ** 2)
    hi = gamma / (gamma + 3.0 * (budget - 2) ** 2)
    return lo, hi


def build_i1(params: I1Params) -> tuple[Instance, LinearOracle]:
    """Unit-value instance where greedy stalls after one risky element.

    Element 1 has dispersion sqrt(gamma); everything else is
    deterministic. Verifies Gamma({1}) in (B-1, B) and that nothing fits
    next to element 1.
    """
    b, gamma = params.budget, params.gamma
    if b < 3:
        raise ParameterError(f"budget must be an integer >= 3, got {b}")
    if not 0.0 < gamma <= 1.0:
        raise ParameterError(f"gamma must lie in (0, 1], got {gamma}")
    n = params.n if params.n is not None else b + 1
    if n < b + 1:
        raise ParameterError(f"n must be >= budget + 1, got {n}")
    lo, hi = i1_alpha_interval(b, gamma)
    alpha = params.alpha if params.alpha is not None else (lo + hi) / 2.0
    deltas = [math.sqrt(gamma)] + [0.0] * (n - 1)
    instance = instance_from_dispersions(deltas, float(b), alpha, values={i: 1.0 for i in range(1, n + 1)}, first_id=1)
    cparams = instance.params()

    state = SelectionState()
    state.insert(instance.element(1), cparams)
    g1 = surrogate_weight(state, cparams)
    if not b - 1 < g1 < b:
        raise ParameterError(
            f"alpha={alpha} puts Gamma of the risky element at {g1}, outside ({b - 1}, {b}); "
            f"admissible alpha interval is ({lo}, {hi})"
        )
    if not candidate_surrogate(state, 0.0, cparams) > b:
        raise ParameterError("a zero-dispersion element still fits next to the risky one")
    return instance, instance.linear_oracle()


@dataclass(frozen=True)
class I2Params:
    """Family i2: epsilon >= 1, n >= 2*epsilon, alpha in (0, 0.5), budget = epsilon + 1."""

    epsilon: int
    alpha: float
    gamma: float
    beta: float
    n: int | None = None


def build_i2(params: I2Params) -> tuple[Instance, LinearOracle]:
    """Two-block linear instance separating dispersion-sum from surrogate ranking.

    Elements 1..epsilon have value 1 and dispersion sqrt(gamma/epsilon);
    elements epsilon+1..n have value epsilon and dispersion
    sqrt((epsilon*gamma + beta)/epsilon). Verifies that the worst
    epsilon-element subset is feasible and every larger subset is not.
    """
    eps, alpha, gamma, beta = params.epsilon, params.alpha, params.gamma, params.beta
    if eps < 1:
        raise ParameterError(f"epsilon must be >= 1, got {eps}")
    if not 0.0 < alpha < 0.5:
        raise ParameterError(f"alpha must lie in (0, 0.5), got {alpha}")
    if gamma <= 0.0 or beta <= 0.0:
        raise ParameterError("gamma and beta must be positive")
    if eps * gamma + beta > 3.0 * alpha / (1.0 - alpha):
        raise ParameterError(
            f"need epsilon*gamma + beta <= 3*alpha/(1-alpha): "
            f"{eps * gamma + beta} > {3.0 * alpha / (1.0 - alpha)}"
        )
    n = params.n if params.n is not None else 2 * eps
    if n < 2 * eps:
        raise ParameterError(f"n must be >= 2*epsilon, got {n}")
    budget = float(eps + 1)
    d_low = math.sqrt(gamma / eps)
    d_high = math.sqrt((eps * gamma + beta) / eps)
    if d_high > 1.0:
        raise ParameterError(f"second-block dispersion {d_high} exceeds 1; shrink gamma or beta")
    deltas = [d_low] * eps + [d_high] * (n - eps)
    values = {i: 1.0 for i in range(1, eps + 1)}
    values.update({j: float(eps) for j in range(eps + 1, n + 1)})
    instance = instance_from_dispersions(deltas, budget, alpha, values=values, first_id=1)
    cparams = instance.params()

    # Worst epsilon-size subset: all second-block elements.
    worst = SelectionState()
    for j in range(eps + 1, 2 * eps + 1):
        worst.insert(instance.element(j), cparams)
    if not surrogate_weight(worst, cparams) <= budget:
        raise ParameterError("an epsilon-size subset is not surrogate-feasible")
    # Cheapest (epsilon+1)-size subset: whole first block plus one second-block element.
    cheapest = SelectionState()
    for i in range(1, eps + 1):
        cheapest.insert(instance.element(i), cparams)
    if not candidate_surrogate(cheapest, d_high, cparams) > budget:
        raise ParameterError("an (epsilon+1)-size subset is surrogate-feasible")
    return instance, instance.linear_oracle()


def build_random_instance(n: int, budget: float, alpha: float, seed: int) -> Instance:
    """n elements with dispersions drawn iid Uniform[0, 1] from the seed."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if not budget > 1.0:
        raise ParameterError(f"budget must exceed 1, got {budget}")
    deltas = rngstream.substream(seed, rngstream.DISPERSION).random(n)
    return instance_from_dispersions(deltas, budget, alpha)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_instance(instance: Instance, target) -> None:
    """Serialize to the textual instance format (17-significant-digit decimals)."""
    lines = [f"n {instance.n}", f"B {_fmt(instance.budget)}", f"alpha {_fmt(instance.alpha)}"]
    for element_id in instance.ids():
        e = instance.element(element_id)
        line = f"elem {e.id} {_fmt(e.delta)}"
        if instance.values is not None:
            line += f" {_fmt(instance.values[e.id])}"
        lines.append(line)
    text = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8", newline="\n")


def _float_token(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a decimal, got {token!r}", lineno) from None


def read_instance(source) -> Instance:
    """Parse the textual instance format; raises ParseError with line numbers."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    header: dict[str, float] = {}
    elements: list[Element] = []
    values: dict[int, float] = {}
    any_value = False
    seen_ids: set[int] = set()
    last_line = 0
    for lineno, line in enumerate(StringIO(text).readlines(), start=1):
        last_line = lineno
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        key = tokens[0]
        if key in ("n", "B", "alpha"):
            if len(tokens) != 2:
                raise ParseError(f"expected '{key} <value>', got {stripped!r}", lineno)
            if key in header:
                raise ParseError(f"duplicate header {key!r}", lineno)
            header[key] = _float_token(tokens[1], lineno)
        elif key == "elem":
            missing = [h for h in ("n", "B", "alpha") if h not in header]
            if missing:
                raise ParseError(f"element before header line(s) {missing}", lineno)
            if len(tokens) not in (3, 4):
                raise ParseError(f"expected 'elem <id> <delta> [<value>]', got {stripped!r}", lineno)
            try:
                element_id = int(tokens[1])
            except ValueError:
                raise ParseError(f"expected an integer id, got {tokens[1]!r}", lineno) from None
            if element_id in seen_ids:
                raise ParseError(f"duplicate element id {element_id}", lineno)
            seen_ids.add(element_id)
            delta = _float_token(tokens[2], lineno)
            if not 0.0 <= delta <= 1.0:
                raise ParseError(f"delta must lie in [0, 1], got {delta}", lineno)
            try:
                elements.append(Element(element_id, delta))
            except ParameterError as exc:
                raise ParseError(str(exc), lineno) from exc
            if len(tokens) == 4:
                value = _float_token(tokens[3], lineno)
                if value < 0.0:
                    raise ParseError(f"value must be >= 0, got {value}", lineno)
                values[element_id] = value
                any_value = True
        else:
            raise ParseError(f"unknown line type {key!r}", lineno)
    missing = [h for h in ("n", "B", "alpha") if h not in header]
    if missing:
        raise ParseError(f"missing header line(s) {missing}", last_line + 1)
    declared = int(header["n"])
    if len(elements) != declared:
        raise ParseError(f"expected {declared} elements, got {len(elements)}", last_line + 1)
    if any_value:
        for e in elements:
            values.setdefault(e.id, 1.0)
        value_map: dict[int, float] | None = values
    else:
        value_map = None
    try:
        return Instance(
            elements=tuple(elements),
            budget=header["B"],
            alpha=header["alpha"],
            values=value_map,
        )
    except ParameterError as exc:
        raise ParseError(str(exc), last_line + 1) from exc
