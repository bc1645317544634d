"""Pure-NumPy implementations of the bitset kernels."""

import numpy as np


def gains_rows(rows, cand, covered, out):
    """out[j] = popcount(rows[cand[j]] & ~covered)."""
    if cand.size:
        counts = np.bitwise_count(rows[cand] & ~covered)
        np.sum(counts, axis=1, dtype=np.int64, out=out)


def gains_samples(reach, cand, covered, out):
    """out[j] = sum over samples s of popcount(reach[s, cand[j]] & ~covered[s])."""
    out[:] = 0
    if not cand.size:
        return
    for s in range(reach.shape[0]):
        counts = np.bitwise_count(reach[s][cand] & ~covered[s])
        out += counts.sum(axis=1, dtype=np.int64)
