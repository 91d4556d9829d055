import random

import pytest
from hypothesis import strategies as st

from tricolor import Graph, build_graph


@st.composite
def graphs(draw, min_n=0, max_n=9, p=0.4):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, mask) if keep]
    return build_graph(edges, n)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return build_graph(edges, n)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
