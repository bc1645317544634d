"""Bitset kernel dispatch: compiled extension when available, NumPy otherwise.

Set CCSUBMOD_KERNELS=cython or CCSUBMOD_KERNELS=numpy to force a backend
(cython raises if the extension was not built). Both backends produce
identical integers, so algorithm output never depends on the choice.
"""

import os

import numpy as np

_requested = os.environ.get("CCSUBMOD_KERNELS", "").strip().lower()
if _requested not in ("", "cython", "numpy"):
    raise RuntimeError(f"CCSUBMOD_KERNELS must be 'cython' or 'numpy', got {_requested!r}")

if _requested in ("", "cython"):
    try:
        from . import _bitset as _impl

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import fallback as _impl

        BACKEND = "numpy"
else:
    from . import fallback as _impl

    BACKEND = "numpy"


def gains_rows(rows, cand, covered):
    """New-bit counts per candidate row against a covered mask.

    rows: (n, W) uint64, cand: (m,) int64 row indices, covered: (W,) uint64.
    Returns (m,) int64 with popcount(rows[c] & ~covered) per candidate.
    """
    out = np.empty(cand.shape[0], dtype=np.int64)
    _impl.gains_rows(rows, cand, covered, out)
    return out


def gains_samples(reach, cand, covered):
    """Per-candidate new-bit counts summed over sample dimension.

    reach: (R, n, W) uint64, cand: (m,) int64, covered: (R, W) uint64.
    Returns (m,) int64.
    """
    out = np.empty(cand.shape[0], dtype=np.int64)
    _impl.gains_samples(reach, cand, covered, out)
    return out


def popcount(words) -> int:
    """Total number of set bits in a uint64 array of any shape."""
    return int(np.bitwise_count(words).sum())


def union_rows(rows, ids):
    """OR-reduction of rows[ids]; returns a fresh (W,) uint64 mask."""
    ids = np.asarray(ids, dtype=np.int64)
    if ids.size == 0:
        return np.zeros(rows.shape[-1], dtype=np.uint64)
    return np.bitwise_or.reduce(rows[ids], axis=0)
