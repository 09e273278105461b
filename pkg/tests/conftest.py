import random
from functools import lru_cache

import pytest

from hypermatch.oracle import gen_query, gen_random_hypergraph
from hypermatch.samples import load_example

# 0-based names for the worked example
E1, E2, E3, E4 = range(4)
F1, F2, F3, F4, F5, F6, F7, F8, F9 = range(9)
U1, U2, U3, U4, U5, U6, U7 = range(7)
V = {i: i - 1 for i in range(1, 13)}  # v_i -> id


@pytest.fixture
def example():
    return load_example()


@lru_cache(maxsize=None)
def instance_suite(count=200, seed=20240601):
    """Seeded ``(data, query)`` pairs in the acceptance parameter ranges."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        nv = rng.randint(30, 80)
        ne = rng.randint(40, 150)
        nl = rng.choice([1, 2, 3, 4])
        k = rng.randint(2, 5)
        h = gen_random_hypergraph(rng.getrandbits(32), nv, ne, nl, (2, 6))
        q = gen_query(rng.getrandbits(32), h, k)
        out.append((h, q))
    return tuple(out)


@lru_cache(maxsize=None)
def small_suite(count=40, seed=7):
    return instance_suite(count, seed)
