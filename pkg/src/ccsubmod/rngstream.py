"""Counter-based random streams.

Every random quantity in the package is drawn from a Philox generator
keyed by (seed, purpose, index), so a value depends only on what it is
for, never on evaluation order or thread scheduling. Purposes partition
the key space; indexes identify the element id, sample number, etc.
"""

import numpy as np

DISPERSION = 1
LIVE_EDGE = 2
MC_WEIGHT = 3
AXIOM_TRIPLES = 4
GRAPH_GEN = 5

_MASK64 = (1 << 64) - 1
_INDEX_BITS = 56


def substream(seed: int, purpose: int, index: int = 0) -> np.random.Generator:
    """Independent generator for (seed, purpose, index)."""
    if not 0 <= index < (1 << _INDEX_BITS):
        raise ValueError(f"stream index out of range: {index}")
    key = np.array(
        [np.uint64(seed & _MASK64), np.uint64((purpose << _INDEX_BITS) | index)],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))
