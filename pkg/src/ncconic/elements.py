"""Central, normal and regular elements of presented graded algebras.

normalize_check solves x_i w = w nu(x_i) for the normalizing matrix nu and
also requires the mirror inclusion w x_i in A_1 w, so a certificate witnesses
the two-sided equality A_1 w = w A_1 in degree deg(w)+1.  regularity_check
combines an annihilator scan, the quotient Hilbert test, and (for degree-1
elements of conic duals) the definitive dual-quotient certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .freealg import NcPoly
from .galgebra import GradedAlgebra, Presentation, build, quotient
from .geometry import CommPoly, SolveResult, eliminate_small
from .linalg import (
    Rows,
    coords_in_basis,
    in_span,
    kernel_basis,
    rank,
    rref,
    solve_linear,
)
from .quadratic import QuadraticPresentation, quad_vector, quadratic_dual
from .rewrite import DegreeExceedsTruncation
from .scalars import Scalar, one, zero


@dataclass
class NormalCertificate:
    w: NcPoly
    nu: list[list[Scalar]]
    central: bool
    regular: str = "unknown"  # "yes" | "no" | "unknown"
    evidence: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.w.degree()


def center_degree(A: GradedAlgebra, d: int) -> list[NcPoly]:
    """Echelonized basis of Z(A)_d = {f : x_i f = f x_i for all i}."""
    if d + 1 > A.truncation:
        raise DegreeExceedsTruncation(f"need degree {d + 1} <= {A.truncation}")
    amb = A.ambient
    spec = amb.spec
    basis_d = A.basis(d)
    dim_next = A.dim(d + 1)
    rows = []
    for w in basis_d:
        col = []
        wp = NcPoly.monomial(amb, w)
        for i in range(amb.n):
            xi = NcPoly.generator(amb, i)
            diff = A.coords(xi * wp - wp * xi, d + 1)
            col.extend(diff)
        rows.append(col)
    ker = kernel_basis(list(map(list, zip(*rows))), len(basis_d), spec) if rows else []
    red, _ = rref(ker, spec) if ker else ([], [])
    return [A.from_coords(v, d) for v in red]


def normalize_check(A: GradedAlgebra, w: NcPoly) -> NormalCertificate | None:
    """Certificate that w is normal (None when not).  nu solves
    x_i w = w sum_j nu[i][j] x_j; central elements get nu = identity."""
    if w.is_zero() or not w.is_homogeneous():
        raise ValueError("w must be homogeneous and nonzero")
    d = w.degree()
    if d + 1 > A.truncation:
        raise DegreeExceedsTruncation(f"need degree {d + 1} <= {A.truncation}")
    amb = A.ambient
    spec = amb.spec
    n = amb.n
    wn = A.nf(w)
    if wn.is_zero():
        raise ValueError("w is zero in the algebra")
    gens = [NcPoly.generator(amb, i) for i in range(n)]
    right = [A.coords(wn * g, d + 1) for g in gens]  # w x_j
    left = [A.coords(g * wn, d + 1) for g in gens]  # x_i w
    # centrality is decided directly, then nu := identity is a valid solution
    if all(
        all((a - b).is_zero() for a, b in zip(left[i], right[i], strict=True)) for i in range(n)
    ):
        nu = [[one(spec) if i == j else zero(spec) for j in range(n)] for i in range(n)]
        return NormalCertificate(wn, nu, central=True)
    cols = list(map(list, zip(*right)))  # matrix with columns w x_j
    nu = []
    for i in range(n):
        sol = solve_linear(cols, left[i], spec)
        if sol.particular is None:
            return None
        nu.append(sol.particular)
    # mirror inclusion: w x_j in span{x_i w}
    for j in range(n):
        if not in_span(left, right[j], spec):
            return None
    return NormalCertificate(wn, nu, central=False)


def nu_invertible(cert: NormalCertificate, spec) -> bool:
    return rank(cert.nu, spec) == len(cert.nu)


def apply_nu(cert: NormalCertificate, A: GradedAlgebra, f: NcPoly, power: int = 1) -> NcPoly:
    out = f
    for _ in range(power):
        out = out.map_linear(cert.nu)
    return A.nf(out)


def _annihilator_scan(A: GradedAlgebra, wn: NcPoly, d: int) -> tuple[int, str] | None:
    """(degree, side) of a nonzero annihilator of w, or None."""
    amb = A.ambient
    spec = amb.spec
    for e in range(1, A.truncation - d + 1):
        basis_e = A.basis(e)
        left_rows = [A.coords(NcPoly.monomial(amb, b) * wn, e + d) for b in basis_e]
        if rank(left_rows, spec) < len(basis_e):
            return e, "left"  # g w = 0 for some g != 0
        right_rows = [A.coords(wn * NcPoly.monomial(amb, b), e + d) for b in basis_e]
        if rank(right_rows, spec) < len(basis_e):
            return e, "right"
    return None


def _conic_dual_quotient_cert(A: GradedAlgebra, wn: NcPoly) -> tuple[bool, str]:
    """Degree-1 regularity certificate for duals of conics: the quadratic
    quotient by w must dualize to a single relation a x^2 + b xy + c yx + d y^2
    with ad != bc."""
    amb = A.ambient
    spec = amb.spec
    n = amb.n
    wv = [zero(spec)] * n
    for word, c in wn.terms.items():
        wv[word[0]] = c
    # complete w to a basis (b1, b2, w) with deterministic unit vectors
    basis_rows = []
    for k in range(n):
        e = [zero(spec)] * n
        e[k] = one(spec)
        if rank(basis_rows + [e] + [wv], spec) == len(basis_rows) + 2:
            basis_rows.append(e)
        if len(basis_rows) == n - 1:
            break
    B = basis_rows + [wv]  # rows are the new basis vectors
    # coordinates of old generators in the new basis: solve B^T c = e_k
    cols = list(map(list, zip(*B)))
    C = []
    for k in range(n):
        e = [zero(spec)] * n
        e[k] = one(spec)
        sol = solve_linear(cols, e, spec)
        assert sol.particular is not None
        C.append(sol.particular)
    # project each quadratic relation to the (b1, b2) block
    proj_rows = []
    for r in A.presentation.relations:
        if r.degree() != 2:
            return False, "ambient is not quadratic"
        out = [zero(spec)] * 4
        for (i, j), c in r.terms.items():
            for m in range(n - 1):
                for l in range(n - 1):
                    out[m * 2 + l] = out[m * 2 + l] + c * C[i][m] * C[j][l]
        proj_rows.append(out)
    red, _ = rref(proj_rows, spec)
    if len(red) != 3:
        return False, f"projected relation space has dim {len(red)} (need 3)"
    perp = kernel_basis(red, 4, spec)
    if len(perp) != 1:
        return False, "dual of quotient is not 1-dimensional"
    a, b, c, d = perp[0]
    ok = not (a * d - b * c).is_zero()
    return ok, "ad-bc nonzero" if ok else "ad = bc: dual quotient not a quantum plane"


def regularity_check(A: GradedAlgebra, cert: NormalCertificate) -> NormalCertificate:
    """Fill in the regular field: annihilator scan, quotient Hilbert test, and
    the dual-quotient certificate when A looks like a conic dual."""
    wn = cert.w
    d = wn.degree()
    ann = _annihilator_scan(A, wn, d)
    if ann is not None:
        cert.regular = "no"
        cert.evidence["annihilator"] = ann
        return cert
    D = A.truncation
    quo = quotient(A, wn)
    expected = [A.dims[m] - (A.dims[m - d] if m >= d else 0) for m in range(D + 1)]
    actual = quo.dims[: D + 1]
    hilbert_ok = expected == actual
    cert.evidence["hilbert"] = {"expected": expected, "actual": actual}
    applicable = d == 1 and A.dim(1) == 3 and A.stable_from() == (2, 4)
    if applicable:
        ok69, why = _conic_dual_quotient_cert(A, wn)
        cert.evidence["dual_quotient"] = why
        if hilbert_ok and ok69:
            cert.regular = "yes"
        elif not ok69 and not hilbert_ok:
            cert.regular = "no"
        elif not ok69:
            cert.regular = "unknown"
        else:
            cert.regular = "unknown"
        return cert
    cert.regular = "yes" if hilbert_ok else "no"
    return cert


@dataclass
class Degree1Search:
    certificates: list[NormalCertificate]
    complete: bool
    residue: str | None = None
    regular_complete: bool = False  # every regular normal element was found

    def __post_init__(self):
        if self.complete:
            self.regular_complete = True

    def regular(self) -> list[NormalCertificate]:
        return [c for c in self.certificates if c.regular == "yes"]

    def central_regular(self) -> list[NormalCertificate]:
        return [c for c in self.certificates if c.central and c.regular == "yes"]


def central_degree1_search(A: GradedAlgebra) -> Degree1Search:
    """All central degree-1 elements (a linear computation) upgraded with
    regularity; decided exactly whenever the central subspace has dim <= 1.
    For higher-dimensional central subspaces the regular locus need not be
    finite, so completeness is reported through the certificates found on a
    line sweep only when it stays conclusive."""
    Z1 = center_degree(A, 1)
    if not Z1:
        return Degree1Search([], True)
    certs = []
    if len(Z1) == 1:
        cert = normalize_check(A, Z1[0])
        assert cert is not None and cert.central
        certs.append(regularity_check(A, cert))
        return Degree1Search(certs, True)
    return Degree1Search([], False, f"central subspace has dimension {len(Z1)}")


def find_normal_degree1(A: GradedAlgebra) -> Degree1Search:
    """All projective w = sum a_i x_i with A_1 w = w A_1, by solving the
    bordered-minor conditions over the instance field, then certifying each
    candidate.  Completeness over the field is reported in-band."""
    amb = A.ambient
    spec = amb.spec
    n = amb.n
    if n != 3:
        raise ValueError("degree-1 search needs exactly 3 generators")
    if A.truncation < 3:
        raise DegreeExceedsTruncation("truncation must be at least 3")
    dim2 = A.dim(2)
    if dim2 != 4:
        raise ValueError(f"search implemented for dim A_2 = 4 (got {dim2})")
    gens = [NcPoly.generator(amb, i) for i in range(n)]
    # coords of x_k x_j in A_2, reused for both product orders
    prod = [[A.coords(gens[k] * gens[j], 2) for j in range(n)] for k in range(n)]

    def lin_entry(vals: list[Scalar]) -> CommPoly:
        # sum_k vals[k] * a_k as a CommPoly in (a0, a1, a2)
        terms = {}
        for k, c in enumerate(vals):
            if not c.is_zero():
                m = [0, 0, 0]
                m[k] = 1
                terms[tuple(m)] = c
        return CommPoly(3, spec, terms)

    # columns: w x_j and x_i w, entries linear in a
    right_cols = [
        [lin_entry([prod[k][j][r] for k in range(n)]) for r in range(dim2)] for j in range(n)
    ]
    left_cols = [
        [lin_entry([prod[i][k][r] for k in range(n)]) for r in range(dim2)] for i in range(n)
    ]

    def det4(cols: list[list[CommPoly]]) -> CommPoly:
        return _pool_minors(cols, [tuple(range(4))], spec)[0]

    # normality forces span{w x_j} = span{x_i w}, so the combined 4x6 matrix
    # has rank <= 3: every 4x4 minor vanishes
    import itertools as _it

    all_cols = right_cols + left_cols
    eqs = []
    for q in _pool_minors(all_cols, list(_it.combinations(range(6), 4)), spec):
        if not q.is_zero():
            q = q.monic()
            if q not in eqs:
                eqs.append(q)

    # secondary certificate for positive-dimensional candidate sets: a regular
    # w multiplies A_2 onto A_3 bijectively, so if det of that map vanishes on
    # the whole candidate variety, the variety carries no regular element
    basis2 = A.basis(2)
    dim3 = A.dim(3)
    if dim3 != 4:
        raise ValueError(f"search implemented for dim A_3 = 4 (got {dim3})")
    gens3 = [
        [A.coords(NcPoly.monomial(amb, b2) * gens[k], 3) for k in range(n)] for b2 in basis2
    ]
    gens3l = [
        [A.coords(gens[k] * NcPoly.monomial(amb, b2), 3) for k in range(n)] for b2 in basis2
    ]

    def mult_det(table) -> CommPoly:
        cols = []
        for bi in range(len(basis2)):
            col = [lin_entry([table[bi][k][r] for k in range(n)]) for r in range(dim3)]
            cols.append(col)
        return det4(cols)

    det_right = mult_det(gens3)  # b2 -> b2 * w
    det_left = mult_det(gens3l)  # b2 -> w * b2

    o, z = one(spec), zero(spec)
    candidates: list[tuple[Scalar, ...]] = []
    complete = True
    regular_settled = True
    residue = None

    def chart_sub(p: CommPoly, chart: int) -> CommPoly:
        q = p
        for i in range(chart):
            q = q.substitute_value(i, z)
        return q.substitute_value(chart, o)

    for chart in range(n):
        charted = [chart_sub(p, chart) for p in eqs]
        nonzero = [q for q in charted if not q.is_zero()]
        rest = list(range(chart + 1, n))
        if not rest:
            if not nonzero or all(q.evaluate([z] * 3).is_zero() for q in nonzero):
                candidates.append(tuple([z] * chart + [o]))
            continue
        res = eliminate_small(nonzero, max_deg=4) if nonzero else SolveResult(
            [], False, "no equations", [({}, [])]
        )
        chart_incomplete = not res.complete
        if res.residue and residue is None:
            residue = f"chart {chart}: {res.residue}"
        for s in res.solutions:
            pt = list(s)
            pt[chart] = o
            for i in range(chart):
                pt[i] = z
            candidates.append(tuple(pt))
        if chart_incomplete:
            complete = False
            if not nonzero:
                candidates.append(tuple(o if i == chart else z for i in range(3)))
                if residue is None:
                    residue = f"chart {chart}: normality conditions vanish identically"
            if not res.residual_ideals:
                # incompleteness from an unsplit eliminant: points outside the
                # field could still be regular
                regular_settled = False
            # can the leftover branches carry a regular element at all?
            from .geometry import reduce_poly

            for subs, rgb in res.residual_ideals:
                dr = chart_sub(det_right, chart)
                dl = chart_sub(det_left, chart)
                for i, val in subs.items():
                    dr = dr.substitute_value(i, val)
                    dl = dl.substitute_value(i, val)
                if rgb:
                    dr = reduce_poly(dr, rgb)
                    dl = reduce_poly(dl, rgb)
                if not (dr.is_zero() or dl.is_zero()):
                    regular_settled = False

    certs = []
    for a in candidates:
        w = NcPoly(amb, {(k,): c for k, c in enumerate(a) if not c.is_zero()})
        cert = normalize_check(A, w)
        if cert is None:
            continue
        cert = regularity_check(A, cert)
        if not any(_same_projective(cert.w, c.w, spec) for c in certs):
            certs.append(cert)
    out = Degree1Search(certs, complete, residue)
    if not complete and regular_settled:
        out.regular_complete = True
    return out


def _pool_minors(cols, combos, spec) -> list[CommPoly]:
    """Determinants of the 4-row column subsets, sharing sub-minors across
    subsets (first-row Laplace expansion with memoization)."""
    cache: dict[tuple[int, tuple[int, ...]], CommPoly] = {}
    nv = cols[0][0].nvars

    def minor(r: int, colset: tuple[int, ...]) -> CommPoly:
        key = (r, colset)
        got = cache.get(key)
        if got is not None:
            return got
        if r == 3:
            out = cols[colset[0]][3]
        else:
            out = CommPoly.zero(nv, spec)
            for k, c in enumerate(colset):
                sub = minor(r + 1, colset[:k] + colset[k + 1 :])
                term = cols[c][r] * sub
                out = out + (term if k % 2 == 0 else -term)
        cache[key] = out
        return out

    return [minor(0, tuple(combo)) for combo in combos]


def _same_projective(w1: NcPoly, w2: NcPoly, spec) -> bool:
    v1 = quad1_vector(w1)
    v2 = quad1_vector(w2)
    return rank([v1, v2], spec) == 1


def quad1_vector(w: NcPoly):
    n = w.ambient.n
    v = [zero(w.ambient.spec)] * n
    for word, c in w.terms.items():
        v[word[0]] = c
    return v
