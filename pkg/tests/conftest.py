import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modkit.catalog import gen_su2
from modkit.invariant_enum import enumerate_invariants
from modkit.modular_data import modular_data


@pytest.fixture(scope="session")
def su2():
    cache = {}

    def get(k: int):
        if k not in cache:
            cache[k] = gen_su2(k)
        return cache[k]

    return get


@pytest.fixture(scope="session")
def md(su2):
    cache = {}

    def get(k: int):
        if k not in cache:
            cache[k] = modular_data(su2(k))
        return cache[k]

    return get


@pytest.fixture(scope="session")
def enum(md):
    cache = {}

    def get(k: int):
        if k not in cache:
            cache[k] = enumerate_invariants(md(k))
        return cache[k]

    return get
