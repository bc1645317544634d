"""Benchmark graph parsing, normalization, and degree-based dispersions.

Supported formats: plain edge lists (SNAP style, ids used verbatim),
DIMACS ("p edge n m" / "e u v", 1-indexed), and Matrix Market coordinate
files (header line, "n n m", 1-indexed pairs). Gzipped input is detected
by magic bytes. Graphs are normalized to undirected canonical form:
self-loops and duplicate edges are dropped (counts kept on the Graph).
"""

import gzip
import io
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import rngstream
from .errors import ParameterError, ParseError

log = logging.getLogger(__name__)

FORMATS = ("edgelist", "dimacs", "mtx")


@dataclass(frozen=True)
class Graph:
    """Undirected graph: nodes 0..node_count-1 and canonical (u < v) edges."""

    node_count: int
    edges: tuple[tuple[int, int], ...]
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        neigh = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            neigh[u].append(v)
            neigh[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neigh)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.node_count, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _normalize(raw_pairs, node_count) -> Graph:
    seen = set()
    loops = 0
    dups = 0
    for u, v in raw_pairs:
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dups += 1
        else:
            seen.add(key)
    if loops or dups:
        log.info("dropped %d self-loops and %d duplicate edges", loops, dups)
    return Graph(
        node_count=node_count,
        edges=tuple(sorted(seen)),
        dropped_self_loops=loops,
        dropped_duplicates=dups,
    )


def _open_text(source):
    """Accepts a path or a binary stream; returns decoded text lines."""
    if hasattr(source, "read"):
        raw = source.read()
    else:
        raw = Path(source).read_bytes()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    return io.StringIO(raw.decode("utf-8")).readlines()


def _int_token(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def _parse_edgelist(lines) -> Graph:
    pairs = []
    max_id = -1
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(("#", "%")):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {stripped!r}", lineno)
        u, v = (_int_token(t, lineno) for t in tokens)
        if u < 0 or v < 0:
            raise ParseError("negative node id", lineno)
        pairs.append((u, v))
        max_id = max(max_id, u, v)
    return _normalize(pairs, max_id + 1)


def _parse_dimacs(lines) -> Graph:
    declared = None
    pairs = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        tokens = stripped.split()
        if tokens[0] == "p":
            if declared is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise ParseError(f"expected 'p edge n m', got {stripped!r}", lineno)
            declared = _int_token(tokens[2], lineno)
        elif tokens[0] == "e":
            if declared is None:
                raise ParseError("edge before problem line", lineno)
            if len(tokens) != 3:
                raise ParseError(f"expected 'e u v', got {stripped!r}", lineno)
            u, v = (_int_token(t, lineno) for t in tokens[1:])
            if not (1 <= u <= declared and 1 <= v <= declared):
                raise ParseError(f"node id outside 1..{declared}", lineno)
            pairs.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", lineno)
    if declared is None:
        raise ParseError("missing problem line", len(lines) + 1)
    return _normalize(pairs, declared)


def _parse_mtx(lines) -> Graph:
    declared = None
    expected = None
    pairs = []
    for lineno, line in enumerate(lines, start=1):
        if lineno == 1:
            continue  # banner line
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        tokens = stripped.split()
        if declared is None:
            if len(tokens) != 3:
                raise ParseError(f"expected 'n n m', got {stripped!r}", lineno)
            rows, cols, nnz = (_int_token(t, lineno) for t in tokens)
            if rows != cols:
                raise ParseError(f"matrix must be square, got {rows}x{cols}", lineno)
            declared, expected = rows, nnz
        else:
            if len(tokens) not in (2, 3):
                raise ParseError(f"expected 'i j [value]', got {stripped!r}", lineno)
            u, v = (_int_token(t, lineno) for t in tokens[:2])
            if not (1 <= u <= declared and 1 <= v <= declared):
                raise ParseError(f"node id outside 1..{declared}", lineno)
            pairs.append((u - 1, v - 1))
    if declared is None:
        raise ParseError("missing size line", len(lines) + 1)
    if expected is not None and len(pairs) != expected:
        raise ParseError(f"expected {expected} entries, got {len(pairs)}", len(lines) + 1)
    return _normalize(pairs, declared)


def parse_graph(source, fmt: str) -> Graph:
    """Parse a graph from a path or binary stream in the given format."""
    if fmt not in FORMATS:
        raise ParameterError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")
    lines = _open_text(source)
    if fmt == "edgelist":
        return _parse_edgelist(lines)
    if fmt == "dimacs":
        return _parse_dimacs(lines)
    return _parse_mtx(lines)


def write_edgelist(graph: Graph, path) -> None:
    """Write the normalized canonical edge list (one 'u v' per line)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in graph.edges:
            fh.write(f"{u} {v}\n")


def degree_dispersions(graph: Graph) -> np.ndarray:
    """delta_i = degree(i) / sum of degrees; clamped into [0, 1]."""
    total = int(graph.degrees.sum())
    if total == 0:
        raise ParameterError("degree dispersions need at least one edge")
    return np.minimum(graph.degrees / total, 1.0)


def random_gnp_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); deterministic given the seed."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    rng = rngstream.substream(seed, rngstream.GRAPH_GEN, 1)
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    edges = tuple(zip(iu[keep].tolist(), iv[keep].tolist()))
    return Graph(node_count=n, edges=edges)


def random_gnm_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform G(n, m): exactly m distinct edges; deterministic given the seed."""
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    max_edges = n * (n - 1) // 2
    if not 0 <= m <= max_edges:
        raise ParameterError(f"m must lie in [0, {max_edges}], got {m}")
    rng = rngstream.substream(seed, rngstream.GRAPH_GEN, 2)
    chosen = rng.choice(max_edges, size=m, replace=False, shuffle=False)
    chosen.sort()
    # Invert the row-major upper-triangle linearization.
    edges = []
    row_start = 0
    u = 0
    row_len = n - 1
    for idx in chosen.tolist():
        while idx >= row_start + row_len:
            row_start += row_len
            u += 1
            row_len = n - 1 - u
        v = u + 1 + (idx - row_start)
        edges.append((u, v))
    return Graph(node_count=n, edges=tuple(edges))
