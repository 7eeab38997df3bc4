"""Acceptance suite: one test per criterion, each printing a pass/fail line.

All tolerances are exact; every expected value is either trivially forced,
verified against the source tables, or computed by an independent oracle and
frozen in the dataset.  A module-scoped run of the full table verifier backs
the row-by-row criteria.
"""

import io
import random

import pytest

from ncconic import dataset
from ncconic.findim import FiniteAlgebra, classify, from_presentation, is_frobenius
from ncconic.freealg import (
    Ambient,
    NcPoly,
    dehomogenize_poly,
    homogenize_poly,
)
from ncconic.galgebra import Presentation, build
from ncconic.geometry import k_matrix, minors_ideal, sigma_at, solve_projective
from ncconic.linalg import span_equal
from ncconic.presfile import parse_poly
from ncconic.quadratic import QuadraticPresentation, quad_vector, quadratic_dual
from ncconic.rewrite import complete, graded_basis, normal_form
from ncconic.scalars import QQ, Scalar, one, zero

CONIC_TABLES = sorted(dataset.CONIC_TABLES, key=int)


@pytest.fixture(scope="module")
def full_report():
    buf = io.StringIO()
    rep = dataset.verify(out=buf)
    return rep, buf.getvalue()


def _by_check(rep, tables, names):
    out = []
    for r in rep.results:
        if r.table in tables and any(r.check == n or r.check.startswith(n) for n in names):
            out.append(r)
    return out


def _assert_all_pass(results, label):
    fails = [r for r in results if r.status == "FAIL"]
    assert results, f"{label}: no checks ran"
    assert not fails, f"{label}: {[r.line() for r in fails]}"
    print(f"PASS criterion: {label} ({len(results)} checks)")


def test_criterion_1_hilbert_prefixes(full_report):
    rep, _ = full_report
    results = _by_check(rep, CONIC_TABLES, ["hilbert_A", "hilbert_dual", "koszul_identity"])
    _assert_all_pass(results, "1. Hilbert prefixes (1,3,5,7,9) / (1,3,4,4,4) + Koszul identity to degree 6")


def test_criterion_2_table3_centers(full_report):
    rep, _ = full_report
    results = _by_check(rep, {"3"}, ["center_span", "center_empty", "hilbert_qpa"])
    _assert_all_pass(results, "2. Table 3 Z(S)_2 branches")
    # the worked Type T1 example: basis (6.1) and the four sub-branch answers
    amb = Ambient(("x", "y", "z"), QQ)
    x, y, z = (NcPoly.generator(amb, i) for i in range(3))
    rs = complete([x * y - y * x, x * z - z * x + y * x, y * z - z * y + x * y], 6)
    words = ["".join("xyz"[i] for i in w) for w in graded_basis(rs, 3)]
    assert words == ["xxx", "xxy", "xxz", "xyy", "xyz", "xzz", "yyy", "yyz", "yzz", "zzz"]
    branch_rows = [r for r in rep.results if r.table == "3" and r.row.startswith("T1(")]
    assert len({r.row for r in branch_rows}) == 5
    assert all(r.status == "PASS" for r in branch_rows)
    print("PASS criterion: 2b. worked T1 example basis (6.1) and sub-branches")


def test_criterion_3_dual_spans(full_report):
    rep, _ = full_report
    results = _by_check(rep, CONIC_TABLES, ["dual_span"])
    rows_with_G = [
        r
        for r in dataset.load_rows()
        if r.table in dataset.CONIC_TABLES and r.expect("dual")
    ]
    assert len(results) == len(rows_with_G) and len(results) >= 76
    _assert_all_pass(results, "3. printed dual relations span the computed complement")


def test_criterion_4_rn_rz_columns(full_report):
    rep, _ = full_report
    results = _by_check(rep, CONIC_TABLES, ["rn_element", "rz_element", "rn_empty", "rz_empty"])
    _assert_all_pass(results, "4. RN/RZ columns (elements certified, empty columns searched)")
    stars = [r for r in rep.results if r.check.endswith("_star")]
    assert stars and all(r.status == "NOTE" and r.detail for r in stars)
    print(f"PASS criterion: 4b. star rows reported, never silently passed ({len(stars)} notes)")


def test_criterion_5_c_classification(full_report):
    rep, _ = full_report
    results = _by_check(rep, CONIC_TABLES, ["C_dim4", "C_frobenius", "class", "C_map"])
    _assert_all_pass(results, "5. C(A) is 4-dimensional Frobenius of the caption class")
    lam_rows = [r for r in rep.results if r.table == "9" and r.check == "class"]
    assert len(lam_rows) == 12 and all(r.status == "PASS" for r in lam_rows)
    print("PASS criterion: 5b. E-family lambda pairs at lambda = 2, 3")


def test_criterion_6_section5_bijection(full_report):
    rep, _ = full_report
    round_trips = _by_check(rep, {"2"}, ["delta_nabla_roundtrip"])
    assert len(round_trips) == 12  # ten presentations, lambda sampled at 2, 3, -1
    _assert_all_pass(round_trips, "6. classify(delta(nabla(E))) = classify(E) on Table 2")
    spans = [r for r in rep.results if r.check == "rehomogenize_dual_span"]
    named = {"A2", "B3", "C4", "D3", "E3(2)"}
    got = {r.row for r in spans if r.status == "PASS"}
    assert named <= got, f"missing: {named - got}"
    assert all(r.status == "PASS" for r in spans)
    print(f"PASS criterion: 6b. H^z(D_z(A^!)) spans A^! relations ({len(spans)} rows incl. the 5 named)")


def test_criterion_7_bezout(full_report):
    rep, _ = full_report
    dims = _by_check(rep, {"2"}, ["model_dim", "strongly_regular_normal"])
    _assert_all_pass(dims, "7. Bezout dim 4 on Table 2; non-strongly-regular rejected")
    commutative = [
        r for r in rep.results
        if r.table == "2" and r.check == "model_dim" and r.row.startswith("pencil/k[x,y]")
    ]
    assert len(commutative) == 6 and all(r.status == "PASS" for r in commutative)
    counter = [r for r in rep.results if r.table == "2" and "counterexample" in r.row]
    assert {r.check for r in counter} >= {"strongly_regular_normal", "model_dim"}
    assert all(r.status == "PASS" for r in counter)
    print("PASS criterion: 7b. k[x]/(x^3) counterexample: rejected and dim 3")


def test_criterion_8_geometry(full_report):
    rep, _ = full_report
    # the worked example, verbatim
    amb = Ambient(("x", "y", "z"), QQ)
    rels = [parse_poly(t, amb) for t in ["y*z + z*y", "z*x + x*z", "x*y + y*x", "x^2"]]
    K = k_matrix(rels)
    names = ["x", "y", "z"]
    assert [[e.format(names) for e in row] for row in K] == [
        ["0", "z", "y", "x"],
        ["z", "0", "x", "0"],
        ["y", "x", "0", "0"],
    ]
    M = minors_ideal(K)
    assert [m.format(names) for m in M] == ["2*x*y*z", "x^2*z", "-x^2*y", "-x^3"]
    # E_A = V(x): the minors vanish on the line x = 0 and nowhere else
    from ncconic.geometry import normalize_point

    for b, c in [(1, 0), (0, 1), (1, 1), (1, -2), (2, 3)]:
        p = (zero(QQ), Scalar.of(b, QQ), Scalar.of(c, QQ))
        assert all(m.evaluate(list(p)).is_zero() for m in M)
        q = sigma_at(rels, p)
        assert q == normalize_point((zero(QQ), Scalar.of(b, QQ), Scalar.of(-c, QQ)))
    print("PASS criterion: 8. worked example: K, minors, E_A = V(x), sigma(0:b:c) = (0:b:-c)")
    geo = [r for r in rep.results if r.table == "4"]
    _assert_all_pass(geo, "8b. Table 4 point counts {1,2,3,4,6} and sigma actions")
    sq = [r for r in rep.results if r.check == "sigma_squared_identity"]
    assert len(sq) == 5 and all(r.status == "PASS" for r in sq)
    print("PASS criterion: 8c. sigma^2 = id on every verified finite row")


def test_criterion_9_property_suites(full_report):
    # roundtrips, idempotence, biduality, basis-change invariance,
    # structure-constant associativity (validated on construction)
    amb = Ambient(("x", "y"), QQ)
    x, y = NcPoly.generator(amb, 0), NcPoly.generator(amb, 1)
    one2 = NcPoly.one(amb)
    f = x * x - y + one2
    assert dehomogenize_poly(homogenize_poly(f, "z"), 2) == f
    rs = complete([x * y + y * x, x * x], 6, allow_inhomogeneous=False)
    g = y * x * y + x * y
    nf = normal_form(rs, g)
    assert normal_form(rs, nf) == nf
    h = y * y
    assert normal_form(rs, g + h) == nf + normal_form(rs, h)
    assert normal_form(rs, g * h) == normal_form(rs, nf * normal_form(rs, h))
    # biduality across all conic rows
    rows = [r for r in dataset.load_rows() if r.table in dataset.CONIC_TABLES and not r.skip]
    for row in rows:
        q = QuadraticPresentation(Presentation(row.ambient, row.relations))
        dd = quadratic_dual(quadratic_dual(q))
        assert span_equal(
            [quad_vector(r) for r in dd.presentation.relations],
            [quad_vector(r) for r in q.presentation.relations],
            row.spec,
        )
    print(f"PASS criterion: 9. biduality on all {len(rows)} conic rows")
    # classify invariance under random basis change (two reference algebras
    # here; the full 11-algebra sweep lives in test_findim)
    from tests.test_findim import _random_basis_change

    rng = random.Random(97)
    for texts in (("x*y - y*x", "x^2 - 1", "y^2 - 1"), ("x*y - 2 y*x", "x^2", "y^2")):
        A = from_presentation([parse_poly(t, amb) for t in texts])
        want = classify(A)
        for _ in range(20):
            assert classify(_random_basis_change(A, rng)) == want
    print("PASS criterion: 9b. classify invariant under 20 random basis changes")
    rep, _ = full_report
    assert rep.ok
    print("PASS criterion: overall row-by-row table verification is green")
