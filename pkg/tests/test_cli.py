import json

import pytest

from gswitch.cli import main
from gswitch.constructions import named_construction
from gswitch.core import EdgeColouring, apex
from gswitch.fileio import emit_colouring, parse_colouring


@pytest.fixture
def k6(tmp_path):
    p = tmp_path / "k6.ecg"
    p.write_text(emit_colouring(named_construction("paper-k6")))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "paper-k6")
    assert code == 0 and parse_colouring(out) == named_construction("paper-k6")
    code, out, _ = run(capsys, "construct", "gg16", "--apex", "1")
    assert parse_colouring(out) == apex(named_construction("gg16"), 0)


def test_verify_lower_exit_codes(capsys, k6, tmp_path):
    code, out, _ = run(capsys, "verify-lower", "--in", k6, "--group", "C4", "--targets", "3,4,3,4", "--method", "both")
    assert code == 0 and ">= 7" in out
    mono = tmp_path / "mono.ecg"
    mono.write_text(emit_colouring(EdgeColouring.monochromatic(3, 3, 0)))
    code, out, _ = run(capsys, "verify-lower", "--in", str(mono), "--group", "C3", "--targets", "3,3,3")
    assert code == 1 and "clique: 1 2 3" in out
    big = tmp_path / "big.ecg"
    big.write_text(emit_colouring(apex(named_construction("gg16"), 0)))
    code, _, _ = run(capsys, "verify-lower", "--in", str(big), "--group", "C3", "--targets", "4,4,4",
                     "--method", "orbit", "--budget", "50")
    assert code == 2


def test_input_errors(capsys, tmp_path, k6):
    bad = tmp_path / "bad.ecg"
    bad.write_text("ecg 1\nn=3 m=2\n1 2 1\n1 3 1\n")
    code, _, err = run(capsys, "decide", "--in", str(bad), "--group", "C2", "--targets", "3,3")
    assert code == 3 and "missing edge (2,3)" in err
    code, _, err = run(capsys, "decide", "--in", k6, "--group", "C3", "--targets", "3,3,3")
    assert code == 3
    code, _, _ = run(capsys, "decide", "--in", k6, "--group", "C4", "--targets", "3,3")
    assert code == 3
    code, _, _ = run(capsys, "nonsense")
    assert code == 3
    code, _, _ = run(capsys, "decide", "--in", str(tmp_path / "none.ecg"), "--group", "C2", "--targets", "3,3")
    assert code == 3


def test_switch_and_equivalent(capsys, tmp_path):
    g = tmp_path / "g.ecg"
    g.write_text(emit_colouring(EdgeColouring.monochromatic(3, 4, 0)))
    code, out, _ = run(capsys, "switch", "--in", str(g), "--seq", "(1,(1 2 3 4));(2,(1 2 3 4))")
    h = parse_colouring(out)
    assert h.colour(0, 1) == 2 and h.colour(0, 2) == 1
    hp = tmp_path / "h.ecg"
    hp.write_text(out)
    assert run(capsys, "equivalent", "--in1", str(g), "--in2", str(hp), "--group", "C4")[0] == 0
    other = tmp_path / "o.ecg"
    other.write_text(emit_colouring(EdgeColouring.monochromatic(3, 4, 1)))
    assert run(capsys, "equivalent", "--in1", str(g), "--in2", str(other), "--group", "C4")[0] == 1


def test_homogenise(capsys, k6):
    code, out, _ = run(capsys, "homogenise", "--in", k6, "--group", "C4", "--vertex", "1", "--colour", "3")
    h = parse_colouring(out)
    assert all(h.colour(0, u) == 2 for u in range(1, 6))
    assert "# sequence:" in out


def test_classes(capsys):
    assert run(capsys, "classes", "--n", "4", "--m", "3", "--group", "C3")[1].strip() == "9"
    assert run(capsys, "classes", "--n", "4", "--m", "3", "--group", "C3", "--brute")[1].strip() == "9"


def test_push(capsys, tmp_path):
    g = tmp_path / "g.ecg"
    g.write_text(emit_colouring(EdgeColouring.monochromatic(2, 2, 0)))
    code, out, _ = run(capsys, "push", "--in", str(g), "--group", "C2")
    assert code == 0 and "partial=1" in out and "1 3 0" in out
    code, out, _ = run(capsys, "push", "--in", str(g), "--group", "C2", "--star")
    assert "1 3 0" not in out


def test_verify_exhaustive(capsys, tmp_path):
    code, out, err = run(capsys, "-v", "verify-exhaustive", "--n", "7", "--group", "C2", "--targets", "4,4")
    assert code == 0 and "stats" in err
    code, out, _ = run(capsys, "verify-exhaustive", "--n", "6", "--group", "C2", "--targets", "4,4")
    assert code == 1 and parse_colouring(out).n == 6


def test_bounds(capsys, k6):
    code, out, _ = run(capsys, "bounds", "--group", "C4", "--targets", "3,4,3,4", "--witness", k6)
    cert = json.loads(out)
    assert (cert["lo"], cert["hi"]) == (7, 7)
    assert list(cert) == ["format", "group", "target", "lo", "hi", "derivation"]
    assert run(capsys, "bounds", "--group", "C4", "--targets", "3,4,3,4", "--witness", k6)[1] == out


def test_selfiso(capsys, tmp_path):
    g = tmp_path / "g.ecg"
    g.write_text(emit_colouring(EdgeColouring.monochromatic(2, 2, 0)))
    assert run(capsys, "selfiso", "--in", str(g), "--group", "C2")[0] == 1
    g.write_text(emit_colouring(EdgeColouring.monochromatic(3, 3, 0)))
    # every other class member differs from K_3 in colour 1 as an edge multiset
    code, out, _ = run(capsys, "selfiso", "--in", str(g), "--group", "C3")
    assert code == 1
