import io
import os

import pytest
from hypothesis import given, settings, strategies as st

from ncconic.cli import main
from ncconic.freealg import Ambient, NcPoly
from ncconic.presfile import (
    PresSyntaxError,
    parse,
    parse_poly,
    print_poly,
    print_presentation,
)
from ncconic.scalars import QQ, Scalar

F1_TEXT = """label: F1
field: Q
gens: x y z
rel: x*y + y*x
rel: y*z + z*y
rel: z*x + x*z
rel: x^2
"""


def test_parse_examples():
    pf = parse("field: Q\ngens: x y z\nrel: x*y + y*x\n")
    assert len(pf.relations) == 1
    assert str(pf.relations[0]) == "y*x + x*y"
    pf2 = parse("field: Q\ngens: x y z\nrel: x^2 + y(x+z)\n")
    assert str(pf2.relations[0]) == "y*z + y*x + x^2"
    pf3 = parse("field: Q(sqrt 3)\ngens: x y\nrel: (2/sqrt(3))*y^2\n")
    c = list(pf3.relations[0].terms.values())[0]
    assert (c * c).a == 4 / (1 * 3) * 3 / 3 * 3 or str(c) == "2/3*sqrt(3)"


def test_parse_error_positions():
    with pytest.raises(PresSyntaxError) as e:
        parse("field: Q\ngens: x y\nrel: x*q + y\n")
    assert e.value.line == 3
    with pytest.raises(PresSyntaxError):
        parse("field: Q\ngens: x y\nrel: x*\n")
    with pytest.raises(PresSyntaxError):
        parse("field: What\ngens: x\n")
    with pytest.raises(PresSyntaxError):
        parse("field: Q\ngens: x y\nrel: i*x\n")  # i needs Q(i)


def test_multi_letter_identifiers_are_single_names():
    pf = parse("field: Q\ngens: yx y x\nrel: yx - y*x\n")
    r = pf.relations[0]
    assert (0,) in r.terms  # the generator literally named "yx"


def test_print_parse_roundtrip():
    pf = parse(F1_TEXT)
    text = print_presentation(pf)
    pf2 = parse(text)
    assert [print_poly(r) for r in pf2.relations] == [print_poly(r) for r in pf.relations]
    assert print_presentation(pf2) == text


words3 = st.lists(st.integers(min_value=0, max_value=2), min_size=0, max_size=4).map(tuple)
polys3 = st.lists(
    st.tuples(words3, st.integers(min_value=-9, max_value=9)), min_size=1, max_size=5
).map(
    lambda ts: NcPoly(
        Ambient(("x", "y", "z"), QQ),
        {w: Scalar.of(c, QQ) for w, c in dict(ts).items() if c},
    )
)


@given(p=polys3)
@settings(max_examples=80)
def test_printer_roundtrip_property(p):
    amb = Ambient(("x", "y", "z"), QQ)
    if p.is_zero():
        return
    assert parse_poly(print_poly(p), amb) == p


def run_cli(args, tmp_path=None):
    out = io.StringIO()
    code = main(args, out=out)
    return code, out.getvalue()


@pytest.fixture()
def f1_file(tmp_path):
    p = tmp_path / "f1.alg"
    p.write_text(F1_TEXT)
    return str(p)


def test_cli_hilbert(f1_file):
    code, out = run_cli(["hilbert", f1_file, "--max-deg", "4"])
    assert code == 0
    assert out.strip() == "1,3,5,7,9"


def test_cli_dual(f1_file):
    code, out = run_cli(["dual", f1_file])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "field: Q"
    assert sum(1 for l in lines if l.startswith("rel: ")) == 5


def test_cli_basis_center_normal1(f1_file, tmp_path):
    code, out = run_cli(["basis", f1_file, "--deg", "2"])
    assert code == 0 and len(out.strip().splitlines()) == 5
    code, out = run_cli(["center", f1_file, "--deg", "2"])
    assert code == 0
    # the degree-1 search runs on the dual (where A_2 is 4-dimensional)
    dual = tmp_path / "f1dual.alg"
    dual.write_text(run_cli(["dual", f1_file])[1])
    code, out = run_cli(["normal1", str(dual)])
    assert code == 0 and "x" in out


def test_cli_cmap_classify(f1_file, tmp_path):
    code, out = run_cli(["cmap", f1_file])
    assert code == 0
    assert "class: U2V2-comm" in out
    model = tmp_path / "k4.alg"
    model.write_text("field: Q\ngens: x y\nrel: x*y - y*x\nrel: x^2 - 1\nrel: y^2 - 1\n")
    code, out = run_cli(["classify", str(model)])
    assert code == 0 and "class: K4" in out and "frobenius: yes" in out


def test_cli_nabla_delta(tmp_path, f1_file):
    pencil = tmp_path / "pencil.alg"
    pencil.write_text(
        "field: Q\ngens: x y\nrel: x*y - y*x\nelem: x^2 - 1\nelem: y^2 - 1\n"
    )
    code, out = run_cli(["nabla", str(pencil)])
    assert code == 0 and "gens: x y z" in out
    code, out = run_cli(["delta", f1_file])
    assert code == 0 and "class: U2V2-comm" in out


def test_cli_homog_dehomog(tmp_path, f1_file):
    pencil = tmp_path / "pencil.alg"
    pencil.write_text("field: Q\ngens: x y\nrel: x*y - y*x\nelem: x^2 - 1\nelem: y^2 - 1\n")
    code, out = run_cli(["homogenize", str(pencil)])
    assert code == 0 and "gens: x y z" in out
    dual = tmp_path / "dual.alg"
    run = run_cli(["dual", f1_file])
    dual.write_text(run[1])
    code, out = run_cli(["dehomogenize", str(dual), "--elem", "x"])
    assert code == 0 and out.startswith("dim 4")


def test_cli_pointscheme(tmp_path):
    p = tmp_path / "i1.alg"
    p.write_text(
        "field: Q\ngens: x y z\nrel: y*z + z*y\nrel: z*x + x*z\nrel: x*y + y*x\nrel: x^2 + y^2 + z^2\n"
    )
    code, out = run_cli(["pointscheme", str(p)])
    assert code == 0
    assert "points: 6" in out


def test_cli_verify_row():
    code, out = run_cli(["verify", "--table", "14", "--row", "H2"])
    assert code == 0
    assert "summary:" in out and "FAIL" not in out


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("field: Q\ngens: x\nrel: q\n")
    code, _ = run_cli(["hilbert", str(bad)])
    assert code == 2
    code, _ = run_cli(["hilbert", str(tmp_path / "missing.alg")])
    assert code == 2
    nonreg = tmp_path / "nr.alg"
    nonreg.write_text("field: Q\ngens: x y\nrel: x*y - y*x\nrel: x^2\n")
    code, _ = run_cli(["dehomogenize", str(nonreg), "--elem", "x"])
    assert code == 1


def test_env_default_truncation(f1_file, monkeypatch):
    monkeypatch.setenv("NCCONIC_MAX_DEG", "5")
    code, out = run_cli(["hilbert", f1_file])
    assert code == 0
    assert out.strip() == "1,3,5,7,9,11"
