import os
from pathlib import Path

import pytest

from ccsubmod import I1Params, I2Params, build_i1, build_i2

# Real benchmark graphs are looked up here when available; tests that need
# them fall back to seeded stand-in graphs of the same size otherwise.
DATA_DIR = Path(os.environ.get("CCSUBMOD_DATA", Path(__file__).parent / "data"))


def dataset_path(*names):
    for name in names:
        p = DATA_DIR / name
        if p.exists():
            return p
    return None


@pytest.fixture(scope="session")
def i1_case():
    instance, oracle = build_i1(I1Params(budget=5, gamma=0.9))
    return instance, oracle, instance.params()


@pytest.fixture(scope="session")
def i2_case():
    instance, oracle = build_i2(I2Params(epsilon=5, alpha=0.25, gamma=0.1, beta=0.4, n=10))
    return instance, oracle, instance.params()
