import pytest

from ncconic.freealg import Ambient, NcPoly
from ncconic.geometry import (
    BoundExceeded,
    CommPoly,
    NotQuadratic,
    buchberger,
    eliminate_small,
    k_matrix,
    minors_ideal,
    normalize_point,
    reduce_poly,
    sigma_at,
    solve_projective,
    univariate_roots,
)
from ncconic.presfile import parse_poly
from ncconic.scalars import QI, QQ, FieldSpec, Scalar, one, zero

AMB = Ambient(("x", "y", "z"), QQ)
NAMES = ["x", "y", "z"]


def rels(*texts, amb=AMB):
    return [parse_poly(t, amb) for t in texts]


S_CONIC = rels("y*z + z*y", "z*x + x*z", "x*y + y*x", "x^2")


def test_k_matrix_worked_example():
    K = k_matrix(S_CONIC)
    got = [[e.format(NAMES) for e in row] for row in K]
    assert got == [["0", "z", "y", "x"], ["z", "0", "x", "0"], ["y", "x", "0", "0"]]


def test_k_matrix_small_cases():
    amb = AMB
    K = k_matrix(rels("x*y"))
    assert [row[0].format(NAMES) for row in K] == ["y", "0", "0"]
    K2 = k_matrix(rels("x^2 + y^2 + z^2"))
    assert [row[0].format(NAMES) for row in K2] == ["x", "y", "z"]
    with pytest.raises(NotQuadratic):
        k_matrix(rels("x^2 + y"))


def test_minors_worked_example():
    M = minors_ideal(k_matrix(S_CONIC))
    assert [m.format(NAMES) for m in M] == ["2*x*y*z", "x^2*z", "-x^2*y", "-x^3"]


def test_minors_zero_column():
    amb = AMB
    # relations x^2, xy, xz: K has rows only in the x-row; minors missing that
    # column vanish identically
    K = k_matrix(rels("x^2", "x*y", "x*z", "x^2 + x*y"))
    M = minors_ideal(K)
    assert all(m.is_zero() for m in M)


def test_sigma_worked_example():
    p = (zero(QQ), one(QQ), Scalar.of(5, QQ))
    q = sigma_at(S_CONIC, p)
    assert q == (zero(QQ), one(QQ), Scalar.of(-5, QQ))


def test_eliminate_small_examples():
    X0 = CommPoly.var(3, 0, QQ)
    Y0 = CommPoly.var(3, 1, QQ)
    one_p = CommPoly.const(3, one(QQ))
    two_p = CommPoly.const(3, Scalar.of(2, QQ))
    r = eliminate_small([X0 - one_p, Y0 - two_p])
    assert len(r.solutions) == 1 and r.complete
    r2 = eliminate_small([X0 * X0 - one_p, Y0 * Y0 - one_p])
    assert len(r2.solutions) == 4 and r2.complete
    with pytest.raises(BoundExceeded):
        eliminate_small([X0] * 21)


def test_roots_across_fields():
    q3 = FieldSpec(3)
    r, split = univariate_roots([Scalar.of(-2, QQ), zero(QQ), one(QQ)], QQ)
    assert r == [] and not split
    r, split = univariate_roots(
        [Scalar.of(-2, FieldSpec(2)), zero(FieldSpec(2)), one(FieldSpec(2))], FieldSpec(2)
    )
    assert split and len(r) == 2
    # cubic through the sympy path: t^3 - t over Q
    r, split = univariate_roots([zero(QQ), Scalar.of(-1, QQ), zero(QQ), one(QQ)], QQ)
    assert split and len(r) == 3


def test_buchberger_reduces_to_triangular():
    X0 = CommPoly.var(3, 0, QQ)
    Y0 = CommPoly.var(3, 1, QQ)
    gb = buchberger([X0 * Y0 - CommPoly.const(3, one(QQ)), X0 * X0 - Y0])
    # x^3 = 1 must be a consequence
    target = X0 * X0 * X0 - CommPoly.const(3, one(QQ))
    assert reduce_poly(target, gb).is_zero()


def test_point_scheme_counts_table4():
    N_RELS = rels("y*z + z*y + x^2", "z*x + x*z + y^2", "x*y + y*x")
    S_RELS = rels("y*z + z*y", "z*x + x*z", "x*y + y*x")

    def count(relations, spec=QQ):
        amb = Ambient(("x", "y", "z"), spec)
        rl = [parse_poly(str(r), amb) for r in relations]
        pts, complete, _ = solve_projective(minors_ideal(k_matrix(rl)))
        return len(pts), complete, rl, pts

    n1, c1, _, _ = count(N_RELS + rels("x^2"))
    assert (n1, c1) == (1, True)
    n3, c3, rl3, pts3 = count(S_RELS + rels("x^2 + y^2"))
    assert (n3, c3) == (3, True)
    n6, c6, rl6, pts6 = count(S_RELS + rels("x^2 + y^2 + z^2"))
    assert (n6, c6) == (6, True)
    n2, c2, _, _ = count(N_RELS + rels("3 x^2 + 3 y^2 + 4 z^2"))
    assert (n2, c2) == (2, True)
    # sigma is a bijection with sigma^2 = id on these finite schemes
    for rl, pts in ((rl3, pts3), (rl6, pts6)):
        sigma = {p: sigma_at(rl, p) for p in pts}
        assert set(sigma.values()) == set(pts)
        assert all(sigma[sigma[p]] == p for p in pts)


def test_points_annihilate_minors():
    amb = Ambient(("x", "y", "z"), QI)
    rl = [
        parse_poly(t, amb)
        for t in ["y*z + z*y + x^2", "z*x + x*z + y^2", "x*y + y*x", "x^2 + y^2 - 4 z^2"]
    ]
    M = minors_ideal(k_matrix(rl))
    pts, complete, _ = solve_projective(M)
    assert complete and len(pts) == 4
    for p in pts:
        assert all(m.evaluate(list(p)).is_zero() for m in M)
        assert p == normalize_point(p)
