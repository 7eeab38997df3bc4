import pytest

from ncconic.freealg import Ambient, NcPoly
from ncconic.galgebra import (
    InconclusiveTruncation,
    Presentation,
    build,
    is_regular_normal_sequence,
    quotient,
)
from ncconic.scalars import QQ

AMB = Ambient(("x", "y", "z"), QQ)
X, Y, Z = (NcPoly.generator(AMB, i) for i in range(3))

S_RELS = [Y * Z + Z * Y, Z * X + X * Z, X * Y + Y * X]
COMM_RELS = [X * Y - Y * X, Y * Z - Z * Y, Z * X - X * Z]


def test_build_dims_examples():
    S = build(Presentation(AMB, S_RELS), 4)
    assert S.dims == [1, 3, 6, 10, 15]
    A = build(Presentation(AMB, S_RELS + [X * X]), 4)
    assert A.dims == [1, 3, 5, 7, 9]
    # the dual of the S/(x^2) conic has prefix (1,3,4,4,4)
    from ncconic.quadratic import QuadraticPresentation, quadratic_dual

    dq = quadratic_dual(QuadraticPresentation(A.presentation))
    D = build(dq.presentation, 4)
    assert D.dims == [1, 3, 4, 4, 4]


def test_regular_sequences():
    comm = build(Presentation(AMB, COMM_RELS), 6)
    v = is_regular_normal_sequence(comm, [X * X])
    assert v.all_regular_normal
    S = build(Presentation(AMB, S_RELS), 6)
    v2 = is_regular_normal_sequence(S, [X * X, Y * Y, Z * Z])
    assert v2.all_regular_normal
    q = build(Presentation(AMB, S_RELS + [X * X, Y * Y, Z * Z]), 6)
    assert q.dims[:5] == [1, 3, 3, 1, 0]


def test_repeated_element_not_regular():
    amb2 = Ambient(("x", "y"), QQ)
    x, y = NcPoly.generator(amb2, 0), NcPoly.generator(amb2, 1)
    kxy = build(Presentation(amb2, [x * y - y * x]), 6)
    v = is_regular_normal_sequence(kxy, [x * x, x * x])
    assert v.per_element[0].regular
    assert not v.per_element[1].regular
    assert not v.all_regular_normal


def test_hilbert_consistency_after_regular_quotient():
    # multiplying the quotient prefix back by 1/(1-t^d) recovers the ambient
    S = build(Presentation(AMB, S_RELS), 6)
    v = is_regular_normal_sequence(S, [X * X])
    assert v.all_regular_normal
    quo = quotient(S, X * X)
    recovered = []
    for m in range(7):
        acc = 0
        k = m
        while k >= 0:
            acc += quo.dims[k]
            k -= 2
        recovered.append(acc)
    assert recovered == S.dims[:7]


def test_quotient_composition():
    A = build(Presentation(AMB, S_RELS), 4)
    q1 = quotient(quotient(A, X * X), Y * Y)
    q2 = quotient(A, [X * X, Y * Y])
    assert q1.presentation.relations == q2.presentation.relations


def test_quotient_rejects_zero():
    A = build(Presentation(AMB, S_RELS), 4)
    with pytest.raises(ValueError):
        quotient(A, NcPoly.zero(AMB))


def test_inconclusive_truncation():
    S = build(Presentation(AMB, S_RELS), 2)
    with pytest.raises(InconclusiveTruncation):
        is_regular_normal_sequence(S, [X * X])


def test_stable_prefix_detection():
    A = build(Presentation(AMB, S_RELS + [X * X]), 6)
    from ncconic.quadratic import QuadraticPresentation, quadratic_dual

    D = build(quadratic_dual(QuadraticPresentation(A.presentation)).presentation, 6)
    assert D.stable_from() == (2, 4)
    assert A.stable_from() is None
