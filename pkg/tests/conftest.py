import random

import pytest
from hypothesis import settings, strategies as st

from gswitch.core import EdgeColouring, Permutation, num_edges

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def colourings(draw, n=st.integers(1, 6), m=st.integers(2, 4)):
    n_, m_ = draw(n), draw(m)
    cols = draw(st.lists(st.integers(0, m_ - 1), min_size=num_edges(n_), max_size=num_edges(n_)))
    return EdgeColouring(n_, m_, bytes(cols))


@st.composite
def permutations(draw, m):
    return Permutation(tuple(draw(st.permutations(range(m)))))


def random_colouring(rng: random.Random, n: int, m: int) -> EdgeColouring:
    return EdgeColouring(n, m, bytes(rng.randrange(m) for _ in range(num_edges(n))))


@pytest.fixture
def rng():
    return random.Random(20260101)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
