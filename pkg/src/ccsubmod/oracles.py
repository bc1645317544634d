"""Monotone submodular objectives behind one evaluation interface.

Three concrete oracles: additive linear values, graph coverage (a node
covers itself and its neighbors), and influence spread estimated as mean
reachability over a fixed collection of live-edge subgraphs. Coverage and
influence reduce evaluation to popcounts of packed uint64 bitsets, so the
greedy scans run through the kernels in ccsubmod._kernels.

Besides eval/marginal, each oracle hands out a `tracker`: an incremental
cursor over a growing solution that answers batched marginal-gain queries.
Trackers keep exact integer totals internally; marginals are materialized
as eval(S + v) - eval(S) with one fixed operation order, so scalar and
batched queries agree bit-for-bit.
"""

import math
from collections import deque

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from . import _kernels, rngstream
from .errors import InputError, ParameterError
from .graphio import Graph


class SubmodularOracle:
    """Interface: eval(S) with eval(empty) = 0, and exact marginal gains."""

    def eval(self, members) -> float:
        raise NotImplementedError

    def marginal(self, v: int, members) -> float:
        """eval(S union {v}) - eval(S); zero when v is already in S."""
        members = set(members)
        if v in members:
            return 0.0
        return self.eval(members | {v}) - self.eval(members)

    def tracker(self):
        return _EvalTracker(self)


class _EvalTracker:
    """Fallback tracker that answers gain queries through plain eval calls."""

    def __init__(self, oracle):
        self._oracle = oracle
        self._members: list[int] = []
        self.value = 0.0

    def gains(self, ids: np.ndarray) -> np.ndarray:
        base = self.value
        return np.array(
            [self._oracle.eval(self._members + [int(v)]) - base for v in ids],
            dtype=np.float64,
        )

    def add(self, v: int) -> None:
        self._members.append(int(v))
        self.value = self._oracle.eval(self._members)

    def copy(self):
        clone = _EvalTracker(self._oracle)
        clone._members = list(self._members)
        clone.value = self.value
        return clone


class LinearOracle(SubmodularOracle):
    """Additive objective: eval(S) = sum of per-element values."""

    def __init__(self, values):
        self.values = {int(i): float(c) for i, c in dict(values).items()}
        for i, c in self.values.items():
            if c < 0.0 or not math.isfinite(c):
                raise ParameterError(f"value for element {i} must be finite and >= 0, got {c}")

    def _lookup(self, v: int) -> float:
        try:
            return self.values[v]
        except KeyError:
            raise InputError(f"unknown element id {v}") from None

    def eval(self, members) -> float:
        ids = sorted(set(members))
        return math.fsum(self._lookup(v) for v in ids)

    def marginal(self, v: int, members) -> float:
        members = set(members)
        if v in members:
            return 0.0
        return self.eval(members | {v}) - self.eval(members)


def _pack_rows(row_bits):
    """Pack an iterable of id-lists into a (n, W) uint64 bitset matrix."""
    n = len(row_bits)
    width = max(1, (n + 63) // 64)
    rows = np.zeros((n, width), dtype=np.uint64)
    for i, bits in enumerate(row_bits):
        for b in bits:
            rows[i, b >> 6] |= np.uint64(1) << np.uint64(b & 63)
    return rows


class CoverageOracle(SubmodularOracle):
    """eval(S) = number of nodes in S plus all their neighbors."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.node_count = graph.node_count
        closed = [(i, *graph.adjacency[i]) for i in range(graph.node_count)]
        self._rows = _pack_rows(closed)

    def _check(self, ids):
        for v in ids:
            if not 0 <= v < self.node_count:
                raise InputError(f"unknown node id {v}")

    def eval(self, members) -> int:
        ids = sorted(set(members))
        self._check(ids)
        return _kernels.popcount(_kernels.union_rows(self._rows, ids))

    def marginal(self, v: int, members) -> int:
        members = set(members)
        self._check(members | {v})
        if v in members:
            return 0
        covered = _kernels.union_rows(self._rows, sorted(members))
        return int(_kernels.gains_rows(self._rows, np.array([v], dtype=np.int64), covered)[0])

    def tracker(self):
        return _BitsetTracker(self._rows)


class _BitsetTracker:
    """Incremental covered-mask cursor for a single bitset universe."""

    def __init__(self, rows, covered=None, total=0):
        self._rows = rows
        self._covered = np.zeros(rows.shape[1], dtype=np.uint64) if covered is None else covered
        self._total = total

    @property
    def value(self) -> float:
        return float(self._total)

    def gains(self, ids: np.ndarray) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.int64)
        raw = _kernels.gains_rows(self._rows, ids, self._covered)
        return (self._total + raw).astype(np.float64) - np.float64(self._total)

    def add(self, v: int) -> None:
        raw = _kernels.gains_rows(self._rows, np.array([v], dtype=np.int64), self._covered)
        self._total += int(raw[0])
        self._covered |= self._rows[v]

    def copy(self):
        return _BitsetTracker(self._rows, self._covered.copy(), self._total)


class InfluenceOracle(SubmodularOracle):
    """Mean reachable-set size over R fixed live-edge samples.

    eval(X) = (1/R) * sum_r |reach_r(X)| where reach_r is reachability in
    sample r. Built by `build_live_edge_samples`; immutable afterwards, so
    evaluations are bit-identical given (seed, R, p).
    """

    def __init__(self, graph, edge_prob, num_samples, seed, reach, kept_arc_counts, arc_count):
        self.graph = graph
        self.edge_prob = edge_prob
        self.num_samples = num_samples
        self.seed = seed
        self.node_count = graph.node_count
        self._reach = reach  # (R, n, W) uint64: per-sample reachability closure rows
        self.kept_arc_counts = kept_arc_counts
        self.arc_count = arc_count

    def _check(self, ids):
        for v in ids:
            if not 0 <= v < self.node_count:
                raise InputError(f"unknown node id {v}")

    def _raw_total(self, ids) -> int:
        total = 0
        for r in range(self.num_samples):
            total += _kernels.popcount(_kernels.union_rows(self._reach[r], ids))
        return total

    def eval(self, members) -> float:
        ids = sorted(set(members))
        self._check(ids)
        return float(self._raw_total(ids)) / self.num_samples

    def marginal(self, v: int, members) -> float:
        members = set(members)
        self._check(members | {v})
        if v in members:
            return 0.0
        ids = sorted(members)
        base = self._raw_total(ids)
        new = self._raw_total(sorted(members | {v}))
        return float(new) / self.num_samples - float(base) / self.num_samples

    def tracker(self):
        return _SampleTracker(self._reach, self.num_samples)


class _SampleTracker:
    """Incremental cursor over per-sample covered masks."""

    def __init__(self, reach, num_samples, covered=None, total=0):
        self._reach = reach
        self._num_samples = num_samples
        if covered is None:
            covered = np.zeros((reach.shape[0], reach.shape[2]), dtype=np.uint64)
        self._covered = covered
        self._total = total

    @property
    def value(self) -> float:
        return float(self._total) / self._num_samples

    def gains(self, ids: np.ndarray) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.int64)
        raw = _kernels.gains_samples(self._reach, ids, self._covered)
        return (self._total + raw).astype(np.float64) / self._num_samples - np.float64(self._total) / self._num_samples

    def add(self, v: int) -> None:
        raw = _kernels.gains_samples(self._reach, np.array([v], dtype=np.int64), self._covered)
        self._total += int(raw[0])
        self._covered |= self._reach[:, v, :]

    def copy(self):
        return _SampleTracker(self._reach, self._num_samples, self._covered.copy(), self._total)


def _symmetrized_arcs(graph: Graph) -> np.ndarray:
    """Both directions of every undirected edge, lexicographically sorted."""
    arcs = []
    for u, v in graph.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    arcs.sort()
    return np.array(arcs, dtype=np.int64).reshape(-1, 2)


def _reach_closure(n, width, src, dst) -> np.ndarray:
    """Per-node reachability bitsets for one arc subset.

    Condenses strongly connected components, then accumulates reach sets
    bottom-up in reverse topological order.
    """
    if src.size == 0:
        rows = np.zeros((n, width), dtype=np.uint64)
        idx = np.arange(n)
        np.bitwise_or.at(rows, (idx, idx >> 6), np.uint64(1) << (idx & 63).astype(np.uint64))
        return rows
    adj = sp.csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
    ncomp, labels = connected_components(adj, directed=True, connection="strong")

    comp_rows = np.zeros((ncomp, width), dtype=np.uint64)
    idx = np.arange(n)
    np.bitwise_or.at(comp_rows, (labels, idx >> 6), np.uint64(1) << (idx & 63).astype(np.uint64))

    cs, cd = labels[src], labels[dst]
    cross = cs != cd
    if cross.any():
        pairs = np.unique(np.stack([cs[cross], cd[cross]], axis=1), axis=0)
    else:
        pairs = np.empty((0, 2), dtype=np.int64)

    children = [[] for _ in range(ncomp)]
    indeg = np.zeros(ncomp, dtype=np.int64)
    for a, b in pairs.tolist():
        children[a].append(b)
        indeg[b] += 1
    queue = deque(np.flatnonzero(indeg == 0).tolist())
    topo = []
    while queue:
        c = queue.popleft()
        topo.append(c)
        for b in children[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    for c in reversed(topo):
        row = comp_rows[c]
        for b in children[c]:
            row |= comp_rows[b]
    return comp_rows[labels]


def build_live_edge_samples(graph: Graph, p: float, num_samples: int, seed: int) -> InfluenceOracle:
    """Draw R live-edge arc subsets and precompute their reachability closures.

    Arc (u, v) survives in sample r iff the Philox stream keyed by
    (seed, r) puts a uniform draw below p at that arc's index, so samples
    are independent of construction order and of each other.
    """
    if num_samples < 1:
        raise ParameterError(f"num_samples must be >= 1, got {num_samples}")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    n = graph.node_count
    width = max(1, (n + 63) // 64)
    arcs = _symmetrized_arcs(graph)
    reach = np.empty((num_samples, n, width), dtype=np.uint64)
    kept_counts = np.empty(num_samples, dtype=np.int64)
    for r in range(num_samples):
        u = rngstream.substream(seed, rngstream.LIVE_EDGE, r).random(arcs.shape[0])
        keep = u < p
        kept_counts[r] = int(np.count_nonzero(keep))
        reach[r] = _reach_closure(n, width, arcs[keep, 0], arcs[keep, 1])
    return InfluenceOracle(graph, p, num_samples, seed, reach, kept_counts, arcs.shape[0])
