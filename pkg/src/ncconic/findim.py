"""Finite-dimensional algebras by structure constants, and the 4-dimensional
Frobenius classification.

The classifier matches a signature derived from exact linear algebra:
commutativity, radical filtration dims (Dickson's trace criterion in char 0),
semisimple block structure via idempotent splitting, and for the radical-cube
family the square-zero quadratic form on J/J^2 whose discriminant separates
the three shapes and carries the twist parameter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .freealg import Ambient, MonomialOrder, NcPoly, Word, _format_word
from .geometry import CommPoly, univariate_roots
from .linalg import (
    Rows,
    Vector,
    coords_in_basis,
    in_span,
    kernel_basis,
    rank,
    rref,
    solve_linear,
)
from .scalars import FieldSpec, Scalar, one, zero


class NotFiniteDimensionalWithinBound(Exception):
    pass


class NotFourDimensional(Exception):
    pass


class NotFrobenius(Exception):
    pass


class SignatureUnmatched(Exception):
    pass


@dataclass(frozen=True)
class FrobeniusClass:
    label: str  # K4, U2xK2, U2xU2, U3xK, U4, U2V2-comm, M2, B-class, C-class, D-class, E-class
    lam: tuple[Scalar, Scalar] | None = None  # {lambda, lambda^{-1}} for E-class

    def __str__(self):
        if self.lam is None:
            return self.label
        return f"{self.label}({self.lam[0]},{self.lam[1]})"


class FiniteAlgebra:
    """dim-N algebra: table[a][b] is the coordinate vector of e_a * e_b.
    Associativity and the unit laws are verified exactly on construction."""

    def __init__(self, spec: FieldSpec, labels: list[str], table: list[list[Vector]], unit: Vector):
        self.spec = spec
        self.labels = labels
        self.table = table
        self.unit = unit
        self.dim = len(labels)
        self._validate()

    def _validate(self):
        n = self.dim
        for a in range(n):
            ua = self.mul(self.unit, self.basis_vector(a))
            au = self.mul(self.basis_vector(a), self.unit)
            if ua != self.basis_vector(a) or au != self.basis_vector(a):
                raise ValueError("unit laws fail")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    left = self.mul(self.table[a][b], self.basis_vector(c))
                    right = self.mul(self.basis_vector(a), self.table[b][c])
                    if left != right:
                        raise ValueError(f"associativity fails at ({a},{b},{c})")

    def basis_vector(self, a: int) -> Vector:
        return [one(self.spec) if i == a else zero(self.spec) for i in range(self.dim)]

    def mul(self, u: Vector, v: Vector) -> Vector:
        out = [zero(self.spec)] * self.dim
        for a, ua in enumerate(u):
            if ua.is_zero():
                continue
            for b, vb in enumerate(v):
                if vb.is_zero():
                    continue
                c = ua * vb
                for k, t in enumerate(self.table[a][b]):
                    if not t.is_zero():
                        out[k] = out[k] + c * t
        return out

    def is_commutative(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a] for a in range(self.dim) for b in range(self.dim)
        )

    def left_mult_matrix(self, u: Vector) -> Rows:
        """Rows are images of basis vectors under left multiplication by u."""
        return [self.mul(u, self.basis_vector(b)) for b in range(self.dim)]

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim}, labels={self.labels})"


# -- construction from an inhomogeneous presentation -----------------------------


def from_presentation(relations: list[NcPoly], bound: int = 8) -> FiniteAlgebra:
    """Finite-dimensional quotient of a free algebra at desk scale: complete
    the relations to a rewrite system with subword reduction (overlap closure
    bounded by the word-length horizon), read off the reduced words, and take
    structure constants by normal form.  The reduced-word set must fit in the
    lower half of the horizon so that products of basis words reduce inside
    the verified range; associativity and the unit laws are then checked
    exactly."""
    from .rewrite import complete, graded_basis

    if not relations:
        raise ValueError("need at least one relation")
    amb = relations[0].ambient
    maxdeg = max(r.degree() for r in relations)
    spec = amb.spec
    last_err = "no horizon tried"
    for L in range(max(2 * maxdeg, 4), bound + 1):
        rs = complete(relations, L, allow_inhomogeneous=True)
        if rs.confluent_up_to < L:
            last_err = f"completion overflowed horizon {L}"
            continue
        basis: list[Word] = []
        too_big = False
        for d in range(L + 1):
            layer = graded_basis(rs, d)
            if layer and 2 * d > L:
                too_big = True
                break
            basis.extend(layer)
        if too_big:
            last_err = f"reduced words exceed half the horizon {L}"
            continue
        index = {w: i for i, w in enumerate(basis)}
        from .rewrite import normal_form

        def red_vec(w1: Word, w2: Word) -> Vector:
            nf = normal_form(rs, NcPoly.monomial(amb, w1 + w2))
            v = [zero(spec)] * len(basis)
            for w, c in nf.terms.items():
                v[index[w]] = c
            return v

        table = [[red_vec(a, b) for b in basis] for a in basis]
        unit = [zero(spec)] * len(basis)
        if () not in index:
            raise NotFiniteDimensionalWithinBound("presentation collapses to the zero ring")
        unit[index[()]] = one(spec)
        labels = [_format_word(amb, w) for w in basis]
        return FiniteAlgebra(spec, labels, table, unit)
    raise NotFiniteDimensionalWithinBound(f"{last_err} (bound {bound})")


# -- Frobenius form existence ------------------------------------------------------


def is_frobenius(A: FiniteAlgebra) -> tuple[bool, Vector | None]:
    """Existence of phi with det(phi(e_a e_b))_ab != 0, by symbolic expansion
    of the determinant in the phi coordinates; witness from a deterministic
    grid (guaranteed by the per-variable degree bound)."""
    N = A.dim
    if N > 8:
        raise ValueError("is_frobenius implemented for dim <= 8")
    spec = A.spec
    # entries G[a][b] = sum_c table[a][b][c] * phi_c, linear CommPolys in phi
    entries = []
    for a in range(N):
        row = []
        for b in range(N):
            terms = {}
            for c, t in enumerate(A.table[a][b]):
                if not t.is_zero():
                    m = [0] * N
                    m[c] = 1
                    terms[tuple(m)] = t
            row.append(CommPoly(N, spec, terms))
        entries.append(row)
    det = _det_memo(entries, spec)
    if det.is_zero():
        return False, None
    for point in itertools.product(range(N + 1), repeat=N):
        vals = [Scalar.of(p, spec) for p in point]
        if not det.evaluate(vals).is_zero():
            return True, vals
    raise AssertionError("nonzero determinant with no grid witness")


def _det_memo(entries: list[list[CommPoly]], spec: FieldSpec) -> CommPoly:
    N = len(entries)
    cache: dict[tuple[int, tuple[int, ...]], CommPoly] = {}

    def minor(r: int, cols: tuple[int, ...]) -> CommPoly:
        if r == N:
            return CommPoly.const(entries[0][0].nvars, one(spec))
        key = (r, cols)
        if key in cache:
            return cache[key]
        acc = CommPoly.zero(entries[0][0].nvars, spec)
        for k, c in enumerate(cols):
            term = entries[r][c] * minor(r + 1, cols[:k] + cols[k + 1 :])
            acc = acc + (term if k % 2 == 0 else -term)
        cache[key] = acc
        return acc

    return minor(0, tuple(range(N)))


# -- invariants and classification ---------------------------------------------------


@dataclass
class AlgebraInvariants:
    commutative: bool
    center_dim: int
    radical_dims: tuple[int, int, int]  # dims of J, J^2, J^3
    block_dims: list[int]  # dims of the blocks of A/J (sorted)
    blocks_split: bool  # False when idempotent splitting hit a field obstruction
    radical_basis: Rows
    j2_basis: Rows


def _product_span(A: FiniteAlgebra, left: Rows, right: Rows) -> Rows:
    prods = [A.mul(u, v) for u in left for v in right]
    red, _ = rref(prods, A.spec) if prods else ([], [])
    return red


def radical_basis(A: FiniteAlgebra) -> Rows:
    """x in J iff trace(L_{x e_a}) = 0 for all a (char 0 trace criterion)."""
    spec = A.spec
    N = A.dim
    trL = []
    for b in range(N):
        rowsm = A.left_mult_matrix(A.basis_vector(b))
        trL.append(sum((rowsm[i][i] for i in range(N)), zero(spec)))
    sys_rows = []
    for a in range(N):
        row = []
        for c in range(N):
            prod = A.table[c][a]
            row.append(sum((prod[b] * trL[b] for b in range(N)), zero(spec)))
        sys_rows.append(row)
    ker = kernel_basis(sys_rows, N, spec)
    red, _ = rref(ker, spec) if ker else ([], [])
    return red


def center_basis(A: FiniteAlgebra) -> Rows:
    spec = A.spec
    N = A.dim
    rows = []
    for c in range(N):
        col = []
        for b in range(N):
            diff = [
                x - y
                for x, y in zip(A.table[c][b], A.table[b][c], strict=True)
            ]
            col.extend(diff)
        rows.append(col)
    ker = kernel_basis(list(map(list, zip(*rows))), N, spec)
    red, _ = rref(ker, spec) if ker else ([], [])
    return red


def _quotient_algebra(A: FiniteAlgebra, ideal: Rows) -> tuple["FiniteAlgebra", list[Vector]]:
    """A/ideal with a section; returns (quotient, lifts of the quotient basis)."""
    spec = A.spec
    N = A.dim
    red, pivots = rref(ideal, spec) if ideal else ([], [])
    pivot_set = set(pivots)
    free = [c for c in range(N) if c not in pivot_set]

    def project(v: Vector) -> Vector:
        w = list(v)
        for row, pc in zip(red, pivots):
            c = w[pc]
            if not c.is_zero():
                w = [a - c * b for a, b in zip(w, row)]
        return [w[c] for c in free]

    lifts = [A.basis_vector(c) for c in free]
    table = [[project(A.mul(u, v)) for v in lifts] for u in lifts]
    unit = project(A.unit)
    labels = [A.labels[c] for c in free]
    return FiniteAlgebra(spec, labels, table, unit), lifts


def _split_idempotents(A: FiniteAlgebra) -> tuple[list[Vector], bool]:
    """Orthogonal idempotent decomposition of unity in a (semisimple) algebra
    through minimal polynomials of central elements; returns (idempotents,
    fully_split ove the field)."""
    spec = A.spec
    idems = [A.unit]
    split = True
    zb = center_basis(A)
    changed = True
    while changed:
        changed = False
        for t0 in zb:
            new_idems: list[Vector] = []
            for e in idems:
                t = A.mul(e, t0)
                # minimal polynomial of t acting on e*A*e (Krylov from e)
                powers = [e]
                while True:
                    powers.append(A.mul(powers[-1], t))
                    if rank(powers, spec) < len(powers):
                        break
                cols = list(map(list, zip(*powers[:-1])))
                sol = solve_linear(cols, powers[-1], spec)
                assert sol.particular is not None
                coeffs = [-c for c in sol.particular] + [one(spec)]
                roots, f_split = univariate_roots(coeffs, spec)
                if not f_split:
                    split = False
                if len(roots) <= 1:
                    new_idems.append(e)
                    continue
                # split e along the distinct eigenvalues present
                got = []
                for r in roots:
                    # e_r = prod_{s != r} (t - s e)/(r - s) applied to e
                    er = e
                    for s in roots:
                        if (s - r).is_zero():
                            continue
                        factor_vec = [
                            (a - s * b) for a, b in zip(t, e, strict=True)
                        ]
                        er = A.mul(er, [c * (r - s).inverse() for c in factor_vec])
                    if any(not c.is_zero() for c in er):
                        got.append(er)
                if len(got) > 1:
                    changed = True
                    new_idems.extend(got)
                else:
                    new_idems.append(e)
            idems = new_idems
    return idems, split


def invariants(A: FiniteAlgebra) -> AlgebraInvariants:
    spec = A.spec
    J = radical_basis(A)
    J2 = _product_span(A, J, J)
    J3 = _product_span(A, J2, J)
    quot, _ = _quotient_algebra(A, J)
    idems, split = _split_idempotents(quot)
    block_dims = []
    for e in idems:
        prods = [quot.mul(quot.mul(e, quot.basis_vector(b)), e) for b in range(quot.dim)]
        block_dims.append(rank(prods, spec))
    return AlgebraInvariants(
        commutative=A.is_commutative(),
        center_dim=len(center_basis(A)),
        radical_dims=(len(J), len(J2), len(J3)),
        block_dims=sorted(block_dims),
        blocks_split=split,
        radical_basis=J,
        j2_basis=J2,
    )


def _square_zero_form(A: FiniteAlgebra, inv: AlgebraInvariants):
    """Quadratic form q(al, be) with q = coef of (al*u + be*v)^2 in the
    1-dimensional J^2 (well-defined mod J^3 = 0 here)."""
    spec = A.spec
    J, J2 = inv.radical_basis, inv.j2_basis
    # basis of J/J^2: members of J independent mod J^2
    lifts = []
    for v in J:
        if not in_span(J2 + lifts, v, spec):
            lifts.append(v)
    assert len(lifts) == 2 and len(J2) == 1
    g = J2[0]

    def in_g(v: Vector) -> Scalar:
        c = coords_in_basis([g], v, spec)
        assert c is not None
        return c[0]

    u, v = lifts
    qa = in_g(A.mul(u, u))
    qb = in_g(vec := [a + b for a, b in zip(A.mul(u, v), A.mul(v, u), strict=True)])
    qc = in_g(A.mul(v, v))
    return (qa, qb, qc), (u, v), g, in_g


_BLOCKS = {
    "K4": [1, 1, 1, 1],
    "U2xK2": [1, 1, 1],
    "U2xU2": [1, 1],
    "U3xK": [1, 1],
    "U4": [1],
    "U2V2-comm": [1],
    "M2": [4],
    "B-class": [1, 1],
    "C-class": [1],
    "D-class": [1],
    "E-class": [1],
}


def _blocks_consistent(label: str, inv: AlgebraInvariants):
    """The radical filtration identifies the class over the algebraic closure
    (the radical commutes with base change in characteristic 0); the block
    structure is re-checked whenever the instance field splits the semisimple
    quotient, and an actual split mismatch is loud."""
    if inv.blocks_split and inv.block_dims != _BLOCKS[label]:
        raise SignatureUnmatched(
            f"{label} expects blocks {_BLOCKS[label]}, computed {inv.block_dims} (split)"
        )


def classify(A: FiniteAlgebra) -> FrobeniusClass:
    if A.dim != 4:
        raise NotFourDimensional(f"dim {A.dim} != 4")
    frob, _ = is_frobenius(A)
    if not frob:
        raise NotFrobenius("no nondegenerate associative form exists")
    inv = invariants(A)
    dj, dj2, dj3 = inv.radical_dims
    if inv.commutative:
        by_dims = {
            (0, 0, 0): "K4",
            (1, 0, 0): "U2xK2",
            (2, 0, 0): "U2xU2",
            (2, 1, 0): "U3xK",
            (3, 2, 1): "U4",
            (3, 1, 0): "U2V2-comm",
        }
        label = by_dims.get((dj, dj2, dj3))
        if label is None:
            raise SignatureUnmatched(f"commutative signature {inv.radical_dims}")
        _blocks_consistent(label, inv)
        return FrobeniusClass(label)
    if dj == 0:
        _blocks_consistent("M2", inv)
        return FrobeniusClass("M2")
    if (dj, dj2, dj3) == (2, 0, 0):
        _blocks_consistent("B-class", inv)
        return FrobeniusClass("B-class")
    if (dj, dj2, dj3) == (3, 1, 0):
        _blocks_consistent("C-class", inv)  # C/D/E share the block shape
        (qa, qb, qc), (u, v), g, in_g = _square_zero_form(A, inv)
        spec = A.spec
        if qa.is_zero() and qb.is_zero() and qc.is_zero():
            return FrobeniusClass("D-class")
        disc = qb * qb - Scalar.of(4, spec) * qa * qc
        if disc.is_zero():
            return FrobeniusClass("C-class")
        # two square-zero directions: solve qa t^2 + qb t + qc = 0 (dir = t*u + v)
        dirs: list[Vector] = []
        roots, split = univariate_roots([qc, qb, qa], spec)
        for r in roots:
            dirs.append([r * a + b for a, b in zip(u, v, strict=True)])
        if qa.is_zero():
            dirs.append(u)  # the direction at infinity (be = 0)
        if len(dirs) != 2:
            raise SignatureUnmatched(
                f"square-zero form does not split over {spec} (disc {disc})"
            )
        w1, w2 = dirs
        p12 = A.mul(w1, w2)
        p21 = A.mul(w2, w1)
        m1 = in_g(p12)
        m2 = in_g(p21)
        if m1.is_zero() or m2.is_zero():
            raise SignatureUnmatched("degenerate products of square-zero directions")
        mu = m1 / m2
        pair = sorted([mu, mu.inverse()], key=lambda s: (s.a, s.b))
        return FrobeniusClass("E-class", (pair[0], pair[1]))
    raise SignatureUnmatched(f"noncommutative signature {inv.radical_dims}")
