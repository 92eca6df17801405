import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from owabp.generators import RANDOM_KINDS, gen_random, gen_table1
from owabp.model import ScenarioMatrix, WeightVector

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def naive_owa(v, w):
    """OWA by scanning permutations for one that sorts v nonincreasingly."""
    for perm in itertools.permutations(range(len(v))):
        if all(v[perm[r]] >= v[perm[r + 1]] for r in range(len(v) - 1)):
            return sum((w[r] * v[perm[r]] for r in range(len(v))), Fraction(0))
    raise AssertionError("unreachable")


@st.composite
def weight_vectors(draw, K):
    units = draw(st.lists(st.integers(0, 5), min_size=K, max_size=K).filter(lambda u: sum(u) > 0))
    total = sum(units)
    return WeightVector(tuple(Fraction(u, total) for u in units))


@st.composite
def matrices(draw, max_n=6, max_K=5, cost_max=9):
    n = draw(st.integers(1, max_n))
    K = draw(st.integers(1, max_K))
    rows = draw(
        st.lists(st.lists(st.integers(0, cost_max), min_size=n, max_size=n), min_size=K, max_size=K)
    )
    return ScenarioMatrix(tuple(tuple(r) for r in rows))


@st.composite
def random_instances(draw, kinds=RANDOM_KINDS, max_elements=8, max_K=3):
    kind = draw(st.sampled_from(kinds))
    seed = draw(st.integers(0, 2**32))
    K = draw(st.integers(1, max_K))
    if kind == "assignment":
        side = draw(st.integers(1, 3))
        n = draw(st.integers(side, max(side, min(max_elements, side * side))))
        return gen_random(kind, n, K, 9, seed, n_nodes=side)
    if kind == "spanning_tree":
        nodes = draw(st.integers(2, 5))
        n = draw(st.integers(nodes - 1, max(nodes - 1, max_elements)))
        return gen_random(kind, n, K, 9, seed, n_nodes=nodes)
    if kind == "selection":
        return gen_random(kind, draw(st.integers(1, max_elements)), K, 9, seed)
    nodes = draw(st.integers(2, 5))
    return gen_random(kind, draw(st.integers(1, max_elements)), K, 9, seed, n_nodes=nodes)


@pytest.fixture
def table1_k3():
    return gen_table1(3)
