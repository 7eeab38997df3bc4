"""Quadratic algebra machinery: duals, dual elements, Koszul series check.

The relation space W of a quadratic presentation lives in the n^2-dimensional
span of the words x_i x_j (lexicographic (i,j) layout); the dual's relation
space is the orthogonal complement under <x_i x_j, x_k* x_l*> = delta_ik
delta_jl, with dual generators reusing the input names.
"""

from __future__ import annotations

from dataclasses import dataclass

from .freealg import Ambient, MonomialOrder, NcPoly
from .galgebra import GradedAlgebra, Presentation, build
from .linalg import Rows, in_span, kernel_basis, rank, rref
from .scalars import Scalar, zero


class NotCodimensionOne(Exception):
    pass


def quad_vector(f: NcPoly) -> list[Scalar]:
    """Coefficient row of a purely quadratic polynomial in the x_i x_j basis."""
    n = f.ambient.n
    v = [zero(f.ambient.spec)] * (n * n)
    for w, c in f.terms.items():
        if len(w) != 2:
            raise ValueError(f"{f} is not purely quadratic")
        i, j = w
        v[i * n + j] = c
    return v


def quad_poly(ambient: Ambient, v: list[Scalar]) -> NcPoly:
    n = ambient.n
    return NcPoly(
        ambient,
        {(k // n, k % n): c for k, c in enumerate(v) if not c.is_zero()},
    )


@dataclass
class QuadraticPresentation:
    presentation: Presentation

    def __post_init__(self):
        for r in self.presentation.relations:
            if r.degree() != 2 or not r.is_homogeneous():
                raise ValueError(f"relation {r} is not of degree exactly 2")
        spec = self.ambient.spec
        rows = [quad_vector(r) for r in self.presentation.relations]
        if rows and rank(rows, spec) != len(rows):
            # keep an independent generating set, echelonized
            red, _ = rref(rows, spec)
            self.presentation = Presentation(
                self.ambient, [quad_poly(self.ambient, v) for v in red], self.presentation.label
            )

    @property
    def ambient(self) -> Ambient:
        return self.presentation.ambient

    def w_rows(self) -> Rows:
        return [quad_vector(r) for r in self.presentation.relations]


def quadratic_dual(q: QuadraticPresentation) -> QuadraticPresentation:
    amb = q.ambient
    n = amb.n
    rows = q.w_rows()
    if rows:
        perp = kernel_basis(rows, n * n, amb.spec)
    else:
        perp = [
            [zero(amb.spec)] * k + [Scalar.of(1, amb.spec)] + [zero(amb.spec)] * (n * n - k - 1)
            for k in range(n * n)
        ]
    label = q.presentation.label
    dual_label = label[:-1] if label.endswith("!") else (label + "!" if label else "")
    return QuadraticPresentation(
        Presentation(amb, [quad_poly(amb, v) for v in perp], dual_label)
    )


def dual_element(S: QuadraticPresentation, f: NcPoly) -> NcPoly:
    """The element f^! with (S+f)^! / (f^!) = S^!, monic, canonical modulo the
    dual's relation space."""
    amb = S.ambient
    spec = amb.spec
    fv = quad_vector(f)
    ws = S.w_rows()
    if in_span(ws, fv, spec):
        raise NotCodimensionOne(f"{f} lies in the span of the relations")
    n = amb.n
    perp_s = kernel_basis(ws, n * n, spec)
    perp_a = kernel_basis(ws + [fv], n * n, spec)
    if len(perp_a) != len(perp_s) - 1:
        raise NotCodimensionOne("dual relation spaces do not drop by exactly 1")
    red_a, pivots = rref(perp_a, spec)
    gap = None
    for v in perp_s:
        w = list(v)
        for row, pc in zip(red_a, pivots):
            c = w[pc]
            if not c.is_zero():
                w = [a - c * b for a, b in zip(w, row)]
        if any(not c.is_zero() for c in w):
            gap = w
            break
    assert gap is not None
    poly = quad_poly(amb, gap)
    return poly.monic(MonomialOrder.default(n))


def koszul_series_check(A: GradedAlgebra, dual: GradedAlgebra, D: int | None = None) -> bool:
    """Coefficientwise H_{A^!}(t) * H_A(-t) = 1 up to degree D."""
    if D is None:
        D = min(A.truncation, dual.truncation)
    ha = A.dims
    hd = dual.dims
    if len(ha) <= D or len(hd) <= D:
        raise ValueError("algebras not built far enough")
    for m in range(D + 1):
        s = sum((-1) ** i * ha[i] * hd[m - i] for i in range(m + 1))
        if s != (1 if m == 0 else 0):
            return False
    return True


def dual_algebra(A_pres: Presentation, D: int, order=None) -> GradedAlgebra:
    """Convenience: build the quadratic dual of a quadratic presentation."""
    q = QuadraticPresentation(A_pres)
    return build(quadratic_dual(q).presentation, D, order)
