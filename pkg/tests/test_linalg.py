from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ncconic.linalg import (
    in_span,
    is_zero_vector,
    kernel_basis,
    mat_vec,
    rank,
    rref,
    solve_linear,
    span_equal,
)
from ncconic.scalars import QQ, Scalar, one, zero


def S(n):
    return Scalar.of(n, QQ)


small = st.integers(min_value=-6, max_value=6)
matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda nc: st.lists(
        st.lists(small.map(S), min_size=nc, max_size=nc), min_size=1, max_size=5
    )
)


def test_identity_solve():
    m = [[one(QQ) if i == j else zero(QQ) for j in range(3)] for i in range(3)]
    rhs = [one(QQ), zero(QQ), zero(QQ)]
    sol = solve_linear(m, rhs, QQ)
    assert sol.particular == rhs
    assert sol.kernel == []
    assert sol.rank == 3


def test_rank_one_kernel():
    m = [[S(1), S(1)], [S(1), S(1)]]
    assert rank(m, QQ) == 1
    ker = kernel_basis(m, 2, QQ)
    assert len(ker) == 1
    v = ker[0]
    assert (v[0] + v[1]).is_zero()


@given(m=matrices)
@settings(max_examples=60)
def test_kernel_and_rank_nullity(m):
    ncols = len(m[0])
    ker = kernel_basis(m, ncols, QQ)
    for v in ker:
        assert is_zero_vector(mat_vec(m, v, QQ))
    assert rank(m, QQ) + len(ker) == ncols


@given(m=matrices, data=st.data())
@settings(max_examples=60)
def test_solve_consistency(m, data):
    ncols = len(m[0])
    x = data.draw(st.lists(small.map(S), min_size=ncols, max_size=ncols))
    rhs = mat_vec(m, x, QQ)
    sol = solve_linear(m, rhs, QQ)
    assert sol.particular is not None
    assert mat_vec(m, sol.particular, QQ) == rhs


@given(m=matrices)
@settings(max_examples=40)
def test_rref_idempotent_and_span(m):
    red, piv = rref(m, QQ)
    red2, piv2 = rref(red, QQ)
    assert red == red2 and piv == piv2
    assert span_equal(m, red, QQ)
    for row in red:
        assert in_span(m, row, QQ)
