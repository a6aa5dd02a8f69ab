import random

import pytest
from hypothesis import given, strategies as st

from gswitch.constructions import NAMES, named_construction
from gswitch.core import EdgeColouring, SwitchingSequence, Permutation
from gswitch.fileio import (
    FormatError, emit_colouring, emit_push, parse_colouring, parse_partial, parse_sequence,
)
from gswitch.groups import cyclic
from gswitch.push_graph import NO_EDGE, build_push

from conftest import colourings, random_colouring


@given(colourings(n=st.integers(1, 8)))
def test_roundtrip_property(g):
    assert parse_colouring(emit_colouring(g)) == g


def test_roundtrip_random_and_named():
    rng = random.Random(7)
    for _ in range(1000):
        g = random_colouring(rng, rng.randint(1, 7), rng.randint(2, 5))
        assert parse_colouring(emit_colouring(g)) == g
    for name in NAMES:
        g = named_construction(name)
        assert parse_colouring(emit_colouring(g)) == g


def test_paper_k6_emit():
    text = emit_colouring(named_construction("paper-k6"))
    lines = text.splitlines()
    assert lines[0] == "ecg 1" and "n=6 m=4" in lines
    assert len([ln for ln in lines if ln and ln[0].isdigit()]) == 15


def test_any_order_and_comments_canonicalise():
    text = "ecg 1  # magic\n# note\nn=3 m=2\n2 3 1\n1 3 2 # x\n\n1 2 1\n"
    g = parse_colouring(text)
    assert emit_colouring(g) == "ecg 1\nn=3 m=2\n1 2 1\n1 3 2\n2 3 1\n"


def _file(n, m, edges):
    return "ecg 1\n" + f"n={n} m={m}\n" + "".join(f"{i} {j} {c}\n" for i, j, c in edges)


FULL5 = [(i, j, 1) for i in range(1, 6) for j in range(i + 1, 6)]


def test_missing_edge_named():
    with pytest.raises(FormatError, match=r"missing edge \(2,5\)"):
        parse_colouring(_file(5, 2, [e for e in FULL5 if e[:2] != (2, 5)]))


@pytest.mark.parametrize("text,line", [
    (_file(5, 2, FULL5 + [(1, 2, 1)]), 13),
    (_file(5, 2, FULL5[:-1] + [(4, 5, 3)]), 12),
    ("ecg 1\nn=5 m=x\n", 2),
    ("ecg 2\nn=5 m=2\n", 1),
    (_file(5, 2, [(2, 1, 1)]), 3),
    ("", 1),
])
def test_errors_carry_line(text, line):
    with pytest.raises(FormatError) as exc:
        parse_colouring(text)
    assert exc.value.line == line


def test_push_export():
    g = EdgeColouring.monochromatic(2, 2, 0)
    text = emit_push(build_push(g, cyclic(2)))
    assert "n=4 m=2 partial=1" in text
    n, m, mat = parse_partial(text)
    assert n == 4 and mat[0][2] == NO_EDGE and mat[0][1] == 0
    with pytest.raises(FormatError):
        parse_colouring(text)


def test_sequence_parse():
    seq = parse_sequence("(1,(1 2));(3,());(2,(1 2 3))", 3)
    assert [v for v, _ in seq] == [0, 2, 1]
    assert seq.steps[0][1] == Permutation((1, 0, 2))
    s2 = SwitchingSequence(((0, Permutation((1, 2, 0))), (2, Permutation.identity(3))))
    assert parse_sequence(str(s2), 3) == s2
    for bad in ("(0,(1 2))", "1,(1 2)", "(1,(1 4))"):
        with pytest.raises(ValueError):
            parse_sequence(bad, 3)
