import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from gswitch.core import EdgeColouring, Permutation, apply_sequence, num_edges
from gswitch.groups import (
    action_properties, alternating, colour_orbits, commutator_subgroup, cyclic, dihedral,
    generate_group, kernel_of_switch_action, klein_four, parse_group, quotient_action,
    single_edge_sequence, symmetric,
)

from conftest import random_colouring


def P(cycles, m):
    return Permutation.from_cycles(cycles, m)


def test_generate_examples():
    assert generate_group(4, [P([(0, 1, 2, 3)], 4)]).order == 4
    assert generate_group(3, [P([(0, 1)], 3), P([(0, 1, 2)], 3)]).order == 6
    assert generate_group(4, [P([(0, 1, 2)], 4), P([(0, 1, 3)], 4)]).order == 12


@pytest.mark.parametrize("grp", [cyclic(5), symmetric(4), alternating(4), dihedral(6), klein_four()])
def test_generate_idempotent(grp):
    again = generate_group(grp.degree, grp.elements)
    assert again == grp and again.order == grp.order


def test_named_orders():
    assert [symmetric(m).order for m in range(1, 6)] == [1, 2, 6, 24, 120]
    assert alternating(5).order == 60
    assert dihedral(5).order == 10


def test_orbits():
    assert colour_orbits(cyclic(4)) == [(0, 1, 2, 3)]
    assert colour_orbits(generate_group(3, [P([(0, 1)], 3)])) == [(0, 1), (2,)]
    assert colour_orbits(generate_group(4, [P([(0, 1)], 4), P([(2, 3)], 4)])) == [(0, 1), (2, 3)]


def test_action_properties():
    a = action_properties(cyclic(4))
    assert (a.transitive, a.semi_regular, a.abelian) == (True, True, True)
    a = action_properties(symmetric(3))
    assert (a.transitive, a.semi_regular, a.abelian) == (True, False, False)
    a = action_properties(generate_group(3, [P([(0, 1)], 3)]))
    assert (a.transitive, a.semi_regular, a.abelian) == (False, False, True)


def _closure_oracle(grp):
    comms = {b.inverse() * a.inverse() * b * a for a in grp.elements for b in grp.elements}
    return generate_group(grp.degree, sorted(comms, key=lambda p: p.image))


@pytest.mark.parametrize("grp", [cyclic(4), klein_four(), symmetric(3), dihedral(4), alternating(4), symmetric(4), dihedral(5)])
def test_commutator_subgroup(grp):
    sub, words = commutator_subgroup(grp)
    assert sub == _closure_oracle(grp)
    assert set(words) == set(sub.elements)
    for el, w in words.items():
        assert w.evaluate() == el
        for a, b in w.factors:
            assert a in grp and b in grp


def test_commutator_examples():
    assert commutator_subgroup(cyclic(6))[0].order == 1
    assert commutator_subgroup(symmetric(3))[0].order == 3
    sub = commutator_subgroup(dihedral(4))[0]
    assert set(sub.elements) == {Permutation.identity(4), P([(0, 2), (1, 3)], 4)}


def test_quotient_examples():
    q = quotient_action(symmetric(3))
    assert q.degree == 1 and q.order == 1
    assert quotient_action(cyclic(4)) == cyclic(4)
    q = quotient_action(dihedral(4))
    assert q.degree == 2 and q.order == 2


@pytest.mark.parametrize("grp", [symmetric(3), dihedral(4), dihedral(6), alternating(4), symmetric(4), klein_four()])
def test_quotient_order_divides(grp):
    sub, _ = commutator_subgroup(grp)
    assert (grp.order // sub.order) % quotient_action(grp).order == 0


def test_kernel_examples():
    assert kernel_of_switch_action(3, 5) == {(0,) * 5}
    assert kernel_of_switch_action(4, 3) == {(0, 0, 0), (2, 2, 2)}
    assert kernel_of_switch_action(2, 4) == {(0,) * 4, (1,) * 4}


def _fixes_everything(ks, m, n):
    from gswitch.core import SwitchingSequence
    seq = SwitchingSequence(tuple((v, Permutation.rotation(m, k)) for v, k in enumerate(ks)))
    for cols in product(range(m), repeat=num_edges(n)):
        g = EdgeColouring(n, m, bytes(cols))
        if apply_sequence(g, seq) != g:
            return False
    return True


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kernel_brute(m, n):
    if m ** num_edges(n) * m ** n > 300_000:
        pytest.skip("too large for the slow oracle")
    brute = {ks for ks in product(range(m), repeat=n) if _fixes_everything(ks, m, n)}
    assert kernel_of_switch_action(m, n) == brute


def test_single_edge_abelian_errors():
    with pytest.raises(ValueError, match="orbits"):
        single_edge_sequence(cyclic(4), 0, 1, 0, 1)


def _check_single_edge(grp, g, u, v, to):
    seq = single_edge_sequence(grp, u, v, g.colour(u, v), to)
    h = apply_sequence(g, seq)
    diff = [(i, j) for (i, j, c) in g.edges() if h.colour(i, j) != c]
    if g.colour(u, v) == to:
        assert diff == []
    else:
        assert diff == [tuple(sorted((u, v)))] and h.colour(u, v) == to
    assert len(seq) % 4 == 0


def test_single_edge_s3_k4():
    g = EdgeColouring(4, 3, bytes([0, 1, 2, 0, 1, 2]))
    _check_single_edge(symmetric(3), g, 0, 1, 1)


def test_single_edge_a4_all_pairs():
    for frm in range(4):
        for to in range(4):
            g = EdgeColouring(3, 4, bytes([frm, 1, 2]))
            _check_single_edge(alternating(4), g, 0, 1, to)


@given(st.integers(0, 10_000))
def test_single_edge_random(seed):
    rng = random.Random(seed)
    grp = rng.choice([symmetric(3), alternating(4), symmetric(4), alternating(5), symmetric(5)])
    m = grp.degree
    n = rng.randint(2, 6)
    g = random_colouring(rng, n, m)
    u, v = rng.sample(range(n), 2)
    _check_single_edge(grp, g, u, v, rng.randrange(m))


def test_parse_group():
    assert parse_group("C4") == cyclic(4)
    assert parse_group("s_3") == symmetric(3)
    assert parse_group("(1 2 3)(4 5)").order == 6
    assert parse_group("(1 2);(3 4)", 4).order == 4
    assert parse_group("V4") == klein_four()
    for bad in ("X3", "(1 2", "(0 1)", "C9"):
        with pytest.raises(ValueError):
            parse_group(bad)
