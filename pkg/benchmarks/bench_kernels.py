#!/usr/bin/env python3
"""Benchmark the compiled bitset kernels against the NumPy fallback.

Runs the raw gain scans on synthetic bitset matrices and a full
generalized-greedy coverage solve, once per backend, and prints a table.

Usage: python benchmarks/bench_kernels.py [--nodes N] [--samples R] [--repeat K]
"""

import argparse
import time

import numpy as np

from ccsubmod import CoverageOracle, Strategy, build_random_instance, run_gga
from ccsubmod._kernels import BACKEND, fallback
from ccsubmod.graphio import random_gnm_graph

try:
    from ccsubmod._kernels import _bitset
except ImportError:
    _bitset = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_raw(n, samples, repeat, rng):
    width = (n + 63) // 64
    rows = rng.integers(0, 2**64, size=(n, width), dtype=np.uint64)
    reach = rng.integers(0, 2**64, size=(samples, n, width), dtype=np.uint64)
    covered = rng.integers(0, 2**64, size=width, dtype=np.uint64)
    covered_s = rng.integers(0, 2**64, size=(samples, width), dtype=np.uint64)
    cand = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.int64)

    results = {}
    results["gains_rows/numpy"] = _time(lambda: fallback.gains_rows(rows, cand, covered, out), repeat)
    results["gains_samples/numpy"] = _time(lambda: fallback.gains_samples(reach, cand, covered_s, out), repeat)
    if _bitset is not None:
        results["gains_rows/cython"] = _time(lambda: _bitset.gains_rows(rows, cand, covered, out), repeat)
        results["gains_samples/cython"] = _time(lambda: _bitset.gains_samples(reach, cand, covered_s, out), repeat)
    return results


def bench_solve(n, repeat):
    graph = random_gnm_graph(n, 20 * n, seed=0)
    oracle = CoverageOracle(graph)
    instance = build_random_instance(n, 15.0, 1e-4, seed=0)
    params = instance.params()
    return _time(lambda: run_gga(instance, oracle, params, Strategy.SURROGATE_WEIGHT), repeat)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=4000)
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"active backend: {BACKEND}")
    print(f"raw scans on n={args.nodes}, samples={args.samples}:")
    raw = bench_raw(args.nodes, args.samples, args.repeat, rng)
    for name in sorted(raw):
        print(f"  {name:24s} {raw[name] * 1e3:10.3f} ms")
    for kernel in ("gains_rows", "gains_samples"):
        cy, np_ = f"{kernel}/cython", f"{kernel}/numpy"
        if cy in raw:
            print(f"  {kernel} speedup: {raw[np_] / raw[cy]:.2f}x")
    solve = bench_solve(args.nodes, max(1, args.repeat // 2))
    print(f"gga-s2 coverage solve (n={args.nodes}, backend={BACKEND}): {solve * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
