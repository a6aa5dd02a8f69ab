from collections import Counter

import pytest

from gswitch.constructions import (
    CosetColouringSpec, build_coset_colouring, mono_triangle_count, named_construction,
)
from gswitch.core import find_mono_clique


def _degrees(g):
    deg = Counter()
    for i, j, c in g.edges():
        deg[(i, c)] += 1
        deg[(j, c)] += 1
    return deg


def test_gf16_regular():
    g = build_coset_colouring(CosetColouringSpec(index=3, poly=0b10011))
    assert (g.n, g.m) == (16, 3)
    assert set(_degrees(g).values()) == {5}


def test_gf41_regular():
    g = build_coset_colouring(CosetColouringSpec(index=4, prime=41))
    assert (g.n, g.m) == (41, 4)
    assert set(_degrees(g).values()) == {10}


def test_p5_two_pentagons():
    g = build_coset_colouring(CosetColouringSpec(index=2, prime=5))
    assert set(_degrees(g).values()) == {2}
    assert mono_triangle_count(g) == (0, 10)


def test_minus_one_must_be_in_subgroup():
    with pytest.raises(ValueError):
        build_coset_colouring(CosetColouringSpec(index=2, prime=7))


def test_named():
    k6 = named_construction("paper-k6")
    assert (k6.n, k6.m) == (6, 4)
    assert all(find_mono_clique(k6, c, 3) is None for c in (0, 2))
    assert all(find_mono_clique(k6, c, 4) is None for c in (1, 3))
    assert mono_triangle_count(named_construction("gg16")) == (0, 560)
    assert mono_triangle_count(named_construction("gg41")) == (0, 10660)
    with pytest.raises(ValueError):
        named_construction("nope")


def test_gg16_classes_alike():
    g = named_construction("gg16")
    for c in range(3):
        edges = [(i, j) for i, j, col in g.edges() if col == c]
        assert len(edges) == 40
        assert find_mono_clique(g, c, 3) is None


@pytest.mark.parametrize("name", ["gg16", "gg41"])
def test_translation_invariance(name):
    g = named_construction(name)
    if name == "gg16":
        shift = lambda x, c: x ^ c  # noqa: E731
    else:
        shift = lambda x, c: (x + c) % 41  # noqa: E731
    for c in (1, 3, 7):
        assert g.relabel([shift(x, c) for x in range(g.n)]) == g
