import pytest
from hypothesis import given, settings, strategies as st

from ncconic.freealg import (
    Ambient,
    MonomialOrder,
    NcPoly,
    ZeroInput,
    dehomogenize_poly,
    homogenize_poly,
    wild_homogenize_poly,
)
from ncconic.scalars import QQ, Scalar

AMB = Ambient(("x", "y"), QQ)
AMBZ = Ambient(("x", "y", "z"), QQ)


def gens(amb):
    return [NcPoly.generator(amb, i) for i in range(amb.n)]


coeffs = st.integers(min_value=-5, max_value=5)
words2 = st.lists(st.integers(min_value=0, max_value=1), min_size=0, max_size=4).map(tuple)


def polys(amb=AMB, max_terms=4):
    nmax = amb.n - 1
    words = st.lists(st.integers(min_value=0, max_value=nmax), min_size=0, max_size=4).map(tuple)
    return st.lists(st.tuples(words, coeffs), min_size=0, max_size=max_terms).map(
        lambda ts: NcPoly(amb, {}).__class__(
            amb, {w: Scalar.of(c, QQ) for w, c in dict(ts).items() if c}
        )
    )


def test_products():
    x, y = gens(AMB)
    assert str(x * y) == "x*y"
    p = (x + y) * (x - y)
    assert p == x * x - x * y + y * x - y * y
    assert (x * y - y * x) * x == x * y * x - y * x * x


def test_dehomogenize_examples():
    x, y, z = gens(AMBZ)
    f = x * x - y * z
    assert dehomogenize_poly(f, 2) == NcPoly.generator(AMB, 0) * NcPoly.generator(AMB, 0) - NcPoly.generator(AMB, 1)
    g = x * x - x * y
    assert dehomogenize_poly(g, 2).terms == g.terms  # no z present: same word data
    assert dehomogenize_poly(z * z * z, 2) == NcPoly.one(AMB)


def test_homogenize_examples():
    x, y = gens(AMB)
    f = x * x - y
    h = homogenize_poly(f, "z")
    xz, yz, zz = gens(AMBZ)
    assert h == xz * xz - yz * zz
    # homogeneous input is unchanged apart from the ambient extension
    hom = x * x + y * y
    assert homogenize_poly(hom, "z").terms == hom.terms
    one_plus_x = NcPoly.one(AMB) + x
    assert homogenize_poly(one_plus_x, "z") == zz + xz


def test_wild_homogenize():
    x, y = gens(AMB)
    assert wild_homogenize_poly(x * x - y) == x * x
    assert wild_homogenize_poly(x * x + y) == x * x
    h = x * y + y * x
    assert wild_homogenize_poly(h) == h
    with pytest.raises(ZeroInput):
        wild_homogenize_poly(NcPoly.zero(AMB))


@given(p=polys())
@settings(max_examples=80)
def test_roundtrip_dehomog_homog(p):
    if p.is_zero():
        return
    h = homogenize_poly(p, "z")
    assert dehomogenize_poly(h, 2) == p


def _z_right(p):
    """Normal form in k<x,y>[z]: the central z moves to the right of words."""
    out = {}
    for w, c in p.terms.items():
        k = sum(1 for i in w if i == 2)
        nw = tuple(i for i in w if i != 2) + (2,) * k
        out[nw] = out.get(nw, Scalar.of(0, QQ)) + c
    return NcPoly(AMBZ, out)


@given(p=polys(AMBZ))
@settings(max_examples=80)
def test_roundtrip_homogeneous(p):
    # for homogeneous f of degree d in k<x,y>[z]: (f_z)^z * z^(d - deg f_z) = f
    if p.is_zero():
        return
    d = p.degree()
    f = _z_right(p.homogeneous_component(d))
    if f.is_zero():
        return
    fz = dehomogenize_poly(f, 2)
    if fz.is_zero():
        return
    h = homogenize_poly(fz, "z")
    zz = NcPoly.generator(AMBZ, 2)
    pad = NcPoly.one(AMBZ)
    for _ in range(d - fz.degree()):
        pad = pad * zz
    assert _z_right(NcPoly(AMBZ, dict(h.terms)) * pad) == f


@given(p=polys(), q=polys(), r=polys())
@settings(max_examples=60)
def test_mul_associative_distributive(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(p=polys(), q=polys())
@settings(max_examples=60)
def test_wild_multiplicative(p, q):
    if p.is_zero() or q.is_zero():
        return
    assert wild_homogenize_poly(p * q) == wild_homogenize_poly(p) * wild_homogenize_poly(q)


def test_order_and_leading():
    order = MonomialOrder.default(3)
    x, y, z = gens(AMBZ)
    f = x * z - z * x  # leading word zx under x < y < z
    w, c = f.leading(order)
    assert w == (2, 0)
