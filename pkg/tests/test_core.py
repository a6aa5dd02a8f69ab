import pytest
from hypothesis import given, strategies as st

from gswitch.constructions import named_construction
from gswitch.core import (
    EdgeColouring, Permutation, SwitchingSequence, apex, apply_sequence,
    find_mono_clique, homogenise, switch_at,
)
from gswitch.groups import cyclic, symmetric
from gswitch.search import orbit_enumerate, switch_equivalent

from conftest import colourings, permutations


def test_permutation_composition_applies_right_factor_first():
    p = Permutation.from_cycles([(0, 1)], 3)
    q = Permutation.from_cycles([(1, 2)], 3)
    assert (p * q)(1) == p(q(1)) == 2


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_switch_identity_is_noop():
    g = EdgeColouring(4, 3, bytes([0, 1, 2, 0, 1, 2]))
    assert switch_at(g, 2, Permutation.identity(3)) == g


def test_switch_k3_flip():
    g = EdgeColouring.monochromatic(3, 2, 0)
    h = switch_at(g, 0, Permutation((1, 0)))
    assert h.colours == bytes([1, 1, 0])


@given(colourings(), st.data())
def test_switch_then_inverse(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    p = data.draw(permutations(g.m))
    assert switch_at(switch_at(g, v, p), v, p.inverse()) == g


@given(colourings(n=st.integers(2, 6)), st.data())
def test_switch_touches_only_incident_edges(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    h = switch_at(g, v, data.draw(permutations(g.m)))
    for i, j, c in g.edges():
        if v not in (i, j):
            assert h.colour(i, j) == c


def test_empty_sequence():
    g = EdgeColouring(3, 2, bytes([0, 1, 1]))
    assert apply_sequence(g, SwitchingSequence()) == g


@given(colourings(), st.data())
def test_two_steps_at_one_vertex_compose(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    p1, p2 = data.draw(permutations(g.m)), data.draw(permutations(g.m))
    two = apply_sequence(g, SwitchingSequence(((v, p1), (v, p2))))
    assert two == switch_at(g, v, p2 * p1)


def test_cyclic_switch_formula():
    g = EdgeColouring(2, 4, bytes([1]))
    seq = SwitchingSequence(((0, Permutation.rotation(4, 1)), (1, Permutation.rotation(4, 2))))
    assert apply_sequence(g, seq).colour(0, 1) == 0


def test_sequence_validation_rejects_bad_vertex():
    g = EdgeColouring.monochromatic(3, 2, 0)
    with pytest.raises(ValueError):
        apply_sequence(g, SwitchingSequence(((5, Permutation.identity(2)),)))


@given(colourings(n=st.integers(3, 6), m=st.integers(2, 4).filter(lambda m: m % 2 == 0)), st.data())
def test_parity_invariant_even_m_odd_n(g, data):
    if g.n % 2 == 0:
        return
    seq = data.draw(st.lists(st.tuples(st.integers(0, g.n - 1), st.integers(0, g.m - 1)), max_size=6))
    h = apply_sequence(g, SwitchingSequence(tuple((v, Permutation.rotation(g.m, k)) for v, k in seq)))
    assert sum(h.colours) % 2 == sum(g.colours) % 2


def test_find_mono_clique_examples():
    assert find_mono_clique(EdgeColouring.monochromatic(4, 2, 1), 1, 4) == (0, 1, 2, 3)
    gg16 = named_construction("gg16")
    assert all(find_mono_clique(gg16, c, 3) is None for c in range(3))
    assert find_mono_clique(named_construction("paper-k6"), 2, 3) is None


def test_homogenise_noop_on_apex():
    g = apex(EdgeColouring(3, 3, bytes([0, 1, 2])), 0)
    h, seq = homogenise(g, cyclic(3), 3, 0)
    assert h == g
    assert all(p.is_identity() for _, p in seq)


def test_homogenise_k3_c3():
    g = EdgeColouring.from_matrix([[0, 0, 1], [0, 0, 2], [1, 2, 0]], 3)
    h, seq = homogenise(g, cyclic(3), 0, 0)
    assert h.colour(0, 1) == h.colour(0, 2) == 0
    exps = {v: cyclic(3).exponent(p) for v, p in seq}
    assert exps[2] == 2 and exps[1] == 0


@given(colourings(n=st.integers(2, 5), m=st.integers(2, 3)), st.data())
def test_homogenise_properties(g, data):
    grp = data.draw(st.sampled_from([cyclic(g.m), symmetric(g.m)]))
    v = data.draw(st.integers(0, g.n - 1))
    c = data.draw(st.integers(0, g.m - 1))
    h, seq = homogenise(g, grp, v, c)
    assert all(h.colour(v, u) == c for u in range(g.n) if u != v)
    assert apply_sequence(g, seq) == h
    if g.n <= 4:
        assert switch_equivalent(g, h, grp)


def test_homogenise_needs_transitive_group():
    from gswitch.groups import generate_group
    g = EdgeColouring(3, 3, bytes([2, 0, 0]))
    grp = generate_group(3, [Permutation((1, 0, 2))])
    with pytest.raises(ValueError, match="3"):
        homogenise(g, grp, 0, 0)


def test_apex_examples():
    k1 = EdgeColouring(1, 2, b"")
    assert apex(k1, 0) == EdgeColouring(2, 2, bytes([0]))
    a = apex(named_construction("gg16"), 0)
    assert a.n == 17 and all(a.colour(v, 16) == 0 for v in range(16))
    k6 = named_construction("paper-k6")
    assert k6.n == 6 and all(k6.colour(v, 5) == 0 for v in range(5))


@given(colourings(n=st.integers(2, 5)))
def test_key_roundtrip_and_relabel(g):
    sigma = list(reversed(range(g.n)))
    h = g.relabel(sigma)
    assert h.relabel(sigma) == g
    assert orbit_enumerate(g, cyclic(g.m), budget=10).base == g
