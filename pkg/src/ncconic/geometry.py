"""Point-scheme geometry and the small commutative elimination toolkit.

The K-matrix construction factors each quadratic relation f_k as
(x,y,z) K = (f_1,...,f_m); the rank-drop locus of K is cut out by its
3x3 minors, and the scheme automorphism is recovered pointwise as the
kernel of the linearized relations.

eliminate_small is the shared mini-solver (<= 3 variables, small degrees):
bounded Buchberger in graded lex, then univariate minimal polynomials in the
quotient and exact back-substitution.  Roots are taken over the instance
field only; anything that fails to split is reported as a residue, never
guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .freealg import NcPoly
from .scalars import FieldSpec, Scalar, one, zero

Monomial = tuple[int, ...]


class BoundExceeded(Exception):
    pass


class NotQuadratic(Exception):
    pass


class PointNotOnScheme(Exception):
    pass


def _grlex_key(m: Monomial):
    return (sum(m), m)


class CommPoly:
    """Sparse commutative polynomial over a fixed FieldSpec."""

    __slots__ = ("nvars", "spec", "terms")

    def __init__(self, nvars: int, spec: FieldSpec, terms: dict[Monomial, Scalar]):
        self.nvars = nvars
        self.spec = spec
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    @staticmethod
    def zero(nvars: int, spec: FieldSpec) -> "CommPoly":
        return CommPoly(nvars, spec, {})

    @staticmethod
    def const(nvars: int, c: Scalar) -> "CommPoly":
        return CommPoly(nvars, c.spec, {(0,) * nvars: c})

    @staticmethod
    def var(nvars: int, i: int, spec: FieldSpec) -> "CommPoly":
        m = [0] * nvars
        m[i] = 1
        return CommPoly(nvars, spec, {tuple(m): one(spec)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __add__(self, other: "CommPoly") -> "CommPoly":
        t = dict(self.terms)
        z = zero(self.spec)
        for m, c in other.terms.items():
            t[m] = t.get(m, z) + c
        return CommPoly(self.nvars, self.spec, t)

    def __sub__(self, other: "CommPoly") -> "CommPoly":
        t = dict(self.terms)
        z = zero(self.spec)
        for m, c in other.terms.items():
            t[m] = t.get(m, z) - c
        return CommPoly(self.nvars, self.spec, t)

    def __neg__(self) -> "CommPoly":
        return CommPoly(self.nvars, self.spec, {m: -c for m, c in self.terms.items()})

    def scale(self, c: Scalar) -> "CommPoly":
        return CommPoly(self.nvars, self.spec, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other: "CommPoly") -> "CommPoly":
        t: dict[Monomial, Scalar] = {}
        z = zero(self.spec)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, z) + c1 * c2
        return CommPoly(self.nvars, self.spec, t)

    def __eq__(self, other):
        return (
            isinstance(other, CommPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def leading(self) -> tuple[Monomial, Scalar]:
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def monic(self) -> "CommPoly":
        _, c = self.leading()
        return self.scale(c.inverse())

    def evaluate(self, values: list[Scalar]) -> Scalar:
        acc = zero(self.spec)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * values[i]
            acc = acc + term
        return acc

    def substitute(self, images: list["CommPoly"]) -> "CommPoly":
        """Ring map var_i -> images[i] (all images share nvars/spec)."""
        tgt = images[0]
        out = CommPoly.zero(tgt.nvars, tgt.spec)
        for m, c in self.terms.items():
            term = CommPoly.const(tgt.nvars, c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def substitute_value(self, i: int, value: Scalar) -> "CommPoly":
        """Plug var_i = value; variable i no longer occurs."""
        t: dict[Monomial, Scalar] = {}
        z = zero(self.spec)
        for m, c in self.terms.items():
            v = c
            for _ in range(m[i]):
                v = v * value
            nm = m[:i] + (0,) + m[i + 1 :]
            t[nm] = t.get(nm, z) + v
        return CommPoly(self.nvars, self.spec, t)

    def variables(self) -> set[int]:
        out = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def format(self, names: list[str]) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True):
            word = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}") for i, e in enumerate(m) if e
            )
            neg = c.b < 0 if c.a == 0 else c.a < 0
            mag = -c if neg else c
            if word and mag.is_one():
                body = word
            else:
                cs = str(mag)
                if any(ch in cs[1:] for ch in "+-") or "/" in cs or "*" in cs:
                    cs = f"({cs})"
                body = cs if not word else f"{cs}*{word}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return self.format([f"v{i}" for i in range(self.nvars)])


def _divides(m: Monomial, n: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, n))


def _mono_sub(n: Monomial, m: Monomial) -> Monomial:
    return tuple(b - a for a, b in zip(m, n))


def _mono_lcm(m: Monomial, n: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m, n))


def reduce_poly(f: CommPoly, basis: list[CommPoly]) -> CommPoly:
    """Full multivariate division remainder (deterministic, largest term first)."""
    if not basis:
        return f
    leads = [g.leading()[0] for g in basis]
    work = dict(f.terms)
    out: dict[Monomial, Scalar] = {}
    z = zero(f.spec)
    while work:
        m = max(work, key=_grlex_key)
        c = work.pop(m)
        if c.is_zero():
            continue
        hit = next((i for i, lm in enumerate(leads) if _divides(lm, m)), None)
        if hit is None:
            out[m] = out.get(m, z) + c
            continue
        g = basis[hit]
        lm, lc = g.leading()
        shift = _mono_sub(m, lm)
        f_c = c / lc
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            nm = tuple(a + b for a, b in zip(gm, shift))
            work[nm] = work.get(nm, z) - f_c * gc
    return CommPoly(f.nvars, f.spec, out)


def buchberger(polys: list[CommPoly], deg_bound: int = 24) -> list[CommPoly]:
    """Graded-lex Groebner basis, discarding S-pairs whose lcm degree exceeds
    the bound (our zero-dimensional desk systems never get near it)."""
    basis = [p.monic() for p in polys if not p.is_zero()]
    if not basis:
        return []
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        pairs.sort(
            key=lambda ij: _grlex_key(
                _mono_lcm(basis[ij[0]].leading()[0], basis[ij[1]].leading()[0])
            )
        )
        i, j = pairs.pop(0)
        li, lj = basis[i].leading()[0], basis[j].leading()[0]
        lcm = _mono_lcm(li, lj)
        if sum(lcm) > deg_bound:
            continue
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue  # coprime leads
        spec = basis[i].spec
        mi = CommPoly(basis[i].nvars, spec, {_mono_sub(lcm, li): one(spec)})
        mj = CommPoly(basis[j].nvars, spec, {_mono_sub(lcm, lj): one(spec)})
        s = mi * basis[i] - mj * basis[j]
        r = reduce_poly(s, basis)
        if not r.is_zero():
            basis.append(r.monic())
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    # inter-reduce for a canonical reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1 :]
            r = reduce_poly(basis[i], others)
            if r != basis[i]:
                changed = True
                if r.is_zero():
                    basis = others
                else:
                    basis = others + [r.monic()]
                break
    return sorted(basis, key=lambda p: _grlex_key(p.leading()[0]))


# -- exact univariate roots over the instance field ----------------------------


def _scalar_to_sympy(c: Scalar):
    a = sympy.Rational(c.a.numerator, c.a.denominator)
    if c.b == 0:
        return a
    b = sympy.Rational(c.b.numerator, c.b.denominator)
    return a + b * sympy.sqrt(c.spec.d)


def _sympy_to_scalar(expr, spec: FieldSpec) -> Scalar | None:
    expr = sympy.expand(sympy.radsimp(sympy.together(expr)))
    if spec.is_rational:
        if expr.is_Rational:
            return Scalar(Fraction(int(expr.p), int(expr.q)), Fraction(0), spec)
        return None
    d = spec.d
    root = sympy.sqrt(d)
    if d < 0:
        conj = sympy.expand(expr.subs(sympy.I, -sympy.I))
    else:
        s = sympy.sqrt(d)
        conj = sympy.expand(expr.subs(s, -s))
    a = sympy.expand((expr + conj) / 2)
    b = sympy.expand(sympy.cancel((expr - conj) / (2 * root)))
    if a.is_Rational and b.is_Rational:
        return Scalar(
            Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)), spec
        )
    return None


def univariate_roots(coeffs: list[Scalar], spec: FieldSpec) -> tuple[list[Scalar], bool]:
    """Roots in the field of sum coeffs[k] t^k; (roots, fully_split).  Every
    returned root is re-verified with exact Scalar arithmetic."""
    from .scalars import scalar_sqrt

    while coeffs and coeffs[-1].is_zero():
        coeffs = coeffs[:-1]
    if not coeffs:
        raise ValueError("zero polynomial")
    if len(coeffs) == 1:
        return [], True
    # strip t-power factors: 0 is then a root
    zero_root = False
    while coeffs and coeffs[0].is_zero():
        coeffs = coeffs[1:]
        zero_root = True
    if len(coeffs) == 1:
        return ([zero(spec)] if zero_root else []), True
    if len(coeffs) == 2:
        roots = [-(coeffs[0] / coeffs[1])]
        if zero_root:
            roots.append(zero(spec))
        roots.sort(key=lambda s: (s.a, s.b))
        return roots, True
    if len(coeffs) == 3:
        c, b, a = coeffs
        disc = b * b - Scalar.of(4, spec) * a * c
        s = scalar_sqrt(disc)
        roots = []
        if s is not None:
            half = (Scalar.of(2, spec) * a).inverse()
            for sign in (1, -1):
                r = (-b + (s if sign == 1 else -s)) * half
                if all(not (r - q).is_zero() for q in roots):
                    roots.append(r)
        if zero_root:
            roots.append(zero(spec))
        roots.sort(key=lambda sc: (sc.a, sc.b))
        return roots, s is not None
    t = sympy.Symbol("t")
    expr = sum(_scalar_to_sympy(c) * t**k for k, c in enumerate(coeffs))
    if spec.is_rational:
        factors = sympy.factor_list(expr, t)[1]
    else:
        factors = sympy.factor_list(expr, t, extension=[sympy.sqrt(spec.d)])[1]
    roots: list[Scalar] = []
    split = True
    for fac, _mult in factors:
        p = sympy.Poly(fac, t)
        if p.degree() == 0:
            continue
        if p.degree() > 1:
            split = False
            continue
        c1, c0 = p.all_coeffs()
        r = _sympy_to_scalar(-sympy.together(c0 / c1), spec)
        if r is None:
            split = False
            continue
        acc = zero(spec)
        for c in reversed(coeffs):  # exact Horner verification
            acc = acc * r + c
        if acc.is_zero():
            if all(not (r - q).is_zero() for q in roots):
                roots.append(r)
        else:
            split = False
    if zero_root and all(not q.is_zero() for q in roots):
        roots.append(zero(spec))
    roots.sort(key=lambda s: (s.a, s.b))
    return roots, split


# -- the zero-dimensional solver ------------------------------------------------


@dataclass
class SolveResult:
    solutions: list[tuple[Scalar, ...]]
    complete: bool
    residue: str | None = None
    # non-enumerated branches: (accumulated substitutions, Groebner basis)
    residual_ideals: list[tuple[dict[int, Scalar], list["CommPoly"]]] = field(
        default_factory=list
    )


def _normal_monomials(gb: list[CommPoly], nvars: int, active: list[int]) -> list[Monomial] | None:
    """Monomials in the active variables outside the leading-term ideal;
    None when infinite."""
    leads = [g.leading()[0] for g in gb]
    for i in active:
        if not any(all(e == 0 for k, e in enumerate(lm) if k != i) and lm[i] > 0 for lm in leads):
            return None  # no pure power of variable i leads: not zero-dimensional
    caps = []
    for i in range(nvars):
        if i not in active:
            caps.append(0)
            continue
        pure = min(
            lm[i]
            for lm in leads
            if lm[i] > 0 and all(e == 0 for k, e in enumerate(lm) if k != i)
        )
        caps.append(pure)
    monos: list[Monomial] = []

    def rec(prefix: list[int], i: int):
        if i == nvars:
            m = tuple(prefix)
            if not any(_divides(lm, m) for lm in leads):
                monos.append(m)
            return
        for e in range(caps[i] + 1 if i in active else 1):
            rec(prefix + [e], i + 1)

    rec([], 0)
    return sorted(monos, key=_grlex_key)


def _min_poly_krylov(gb: list[CommPoly], var: int, nvars: int, spec: FieldSpec, cap: int = 40) -> list[Scalar] | None:
    """Minimal polynomial of the coordinate var in the quotient by gb, by
    reducing successive powers with incremental sparse elimination; None when
    no dependence appears within cap (the variable is then transcendental or
    the cap too small)."""
    from .linalg import solve_linear

    v = CommPoly.var(nvars, var, spec)
    powers = [reduce_poly(CommPoly.const(nvars, one(spec)), gb)]
    echelon: dict[Monomial, dict[Monomial, Scalar]] = {}

    def insert(p: CommPoly) -> bool:
        """Reduce against the echelon; False when dependent."""
        vec = dict(p.terms)
        while vec:
            m = max(vec, key=_grlex_key)
            row = echelon.get(m)
            if row is None:
                inv = vec[m].inverse()
                echelon[m] = {k: inv * c for k, c in vec.items()}
                return True
            c = vec.pop(m)
            for k, rc in row.items():
                if k == m:
                    continue
                nc = vec.get(k, zero(spec)) - c * rc
                if nc.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = nc
        return False

    insert(powers[0])
    for _ in range(cap):
        powers.append(reduce_poly(powers[-1] * v, gb))
        if not insert(powers[-1]):
            monos: dict[Monomial, int] = {}
            for p in powers:
                for m in p.terms:
                    monos.setdefault(m, len(monos))
            width = len(monos)

            def to_vec(p: CommPoly):
                vv = [zero(spec)] * width
                for m, c in p.terms.items():
                    vv[monos[m]] = c
                return vv

            vecs = [to_vec(p) for p in powers]
            cols = list(map(list, zip(*vecs[:-1])))
            sol = solve_linear(cols, vecs[-1], spec)
            assert sol.particular is not None
            return [-c for c in sol.particular] + [one(spec)]
    return None


def eliminate_small(system: list[CommPoly], max_deg: int = 4) -> SolveResult:
    """Solve a small polynomial system over its field; see module docstring."""
    polys = [p for p in system if not p.is_zero()]
    if not polys:
        raise BoundExceeded("empty system is positive-dimensional")
    nvars = polys[0].nvars
    spec = polys[0].spec
    active = sorted(set().union(*(p.variables() for p in polys)))
    if nvars > 3 and len(active) > 3:
        raise BoundExceeded("more than 3 variables")
    if len(polys) > 20:
        raise BoundExceeded("more than 20 equations")
    if any(p.degree() > max_deg for p in polys):
        raise BoundExceeded(f"degree above {max_deg}")
    return _solve(polys, nvars, spec, active)


def _solve(polys: list[CommPoly], nvars: int, spec: FieldSpec, active: list[int]) -> SolveResult:
    consts = [p for p in polys if not p.variables()]
    if any(not p.is_zero() for p in consts):
        return SolveResult([], True)
    polys = [p for p in polys if p.variables()]
    if not polys:
        # every equation vanished identically: solutions unconstrained
        if not active:
            return SolveResult([tuple()], True)
        return SolveResult([], False, "positive-dimensional: unconstrained variables", [({}, [])])
    active = sorted(set().union(*(p.variables() for p in polys)))
    gb = buchberger(polys)
    if any(len(g.terms) == 1 and sum(g.leading()[0]) == 0 for g in gb):
        return SolveResult([], True)
    monos = _normal_monomials(gb, nvars, active)
    positive_dimensional = monos is None
    residue = None
    if positive_dimensional:
        # branch on some variable that is still algebraic in the quotient;
        # the rest stays as a residual ideal
        leads = [g.leading()[0] for g in gb]
        algebraic = [
            i
            for i in active
            if any(lm[i] > 0 and all(e == 0 for k, e in enumerate(lm) if k != i) for lm in leads)
        ]
        if not algebraic:
            gbs = "; ".join(repr(g) for g in gb)
            return SolveResult(
                [], False, f"positive-dimensional component, GB leads: {gbs}", [({}, gb)]
            )
        var = algebraic[-1]
        mp = _min_poly_krylov(gb, var, nvars, spec)
        if mp is None:
            gbs = "; ".join(repr(g) for g in gb)
            return SolveResult(
                [], False, f"positive-dimensional component, GB leads: {gbs}", [({}, gb)]
            )
        residue = "positive-dimensional component alongside isolated points"
    else:
        var = active[-1]
        mp = _min_poly_krylov(gb, var, nvars, spec)
        assert mp is not None
    roots, split = univariate_roots(mp, spec)
    if not split and residue is None:
        mp_str = "+".join(f"({_scalar_to_sympy(c)})*t^{k}" for k, c in enumerate(mp))
        residue = f"eliminant of v{var} does not split over {spec}: {mp_str}"
    solutions: list[tuple[Scalar, ...]] = []
    residuals: list[tuple[dict[int, Scalar], list[CommPoly]]] = []
    complete = split and not positive_dimensional
    for r in roots:
        sub = [p.substitute_value(var, r) for p in polys]
        rest_active = [i for i in active if i != var]
        if not rest_active:
            if all(p.is_zero() or p.evaluate([zero(spec)] * nvars).is_zero() for p in sub):
                sol = [zero(spec)] * nvars
                sol[var] = r
                solutions.append(tuple(sol))
            continue
        sub_result = _solve([p for p in sub if not p.is_zero()] or sub, nvars, spec, rest_active)
        complete = complete and sub_result.complete
        if sub_result.residue and residue is None:
            residue = sub_result.residue
        for subs, rgb in sub_result.residual_ideals:
            residuals.append(({**subs, var: r}, rgb))
        for s in sub_result.solutions:
            full = list(s)
            full[var] = r
            solutions.append(tuple(full))
    # exact final verification against the input system
    verified = [s for s in solutions if all(p.evaluate(list(s)).is_zero() for p in polys)]
    verified.sort(key=lambda s: tuple((c.a, c.b) for c in s))
    return SolveResult(verified, complete, residue, residuals)


# -- point schemes ---------------------------------------------------------------


@dataclass
class PointScheme:
    mode: str  # "finite" | "generators"
    points: list[tuple[Scalar, ...]] = field(default_factory=list)
    sigma: dict[tuple[Scalar, ...], tuple[Scalar, ...]] = field(default_factory=dict)
    gens: list[CommPoly] = field(default_factory=list)
    complete: bool = True
    residue: str | None = None


def normalize_point(p: tuple[Scalar, ...]) -> tuple[Scalar, ...]:
    lead = next((c for c in p if not c.is_zero()), None)
    if lead is None:
        raise ValueError("zero vector is not projective")
    inv = lead.inverse()
    return tuple(inv * c for c in p)


def k_matrix(relations: list[NcPoly]) -> list[list[CommPoly]]:
    """3 x m matrix K of linear forms with (x,y,z) K = (f_1,...,f_m)."""
    if not relations:
        raise ValueError("no relations")
    amb = relations[0].ambient
    n = amb.n
    spec = amb.spec
    K = [[CommPoly.zero(n, spec) for _ in relations] for _ in range(n)]
    for k, f in enumerate(relations):
        for w, c in f.terms.items():
            if len(w) != 2:
                raise NotQuadratic(f"relation {f} is not purely quadratic")
            i, j = w
            mono = [0] * n
            mono[j] = 1
            K[i][k] = K[i][k] + CommPoly(n, spec, {tuple(mono): c})
    return K


def _det3(rows: list[list[CommPoly]]) -> CommPoly:
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def minors_ideal(K: list[list[CommPoly]]) -> list[CommPoly]:
    """The 3x3 minors, one per deleted column, deleting the last column first
    (frozen to reproduce the worked rank-drop example verbatim)."""
    ncols = len(K[0])
    out = []
    for t in range(ncols - 1, -1, -1):
        sub = [[K[r][c] for c in range(ncols) if c != t] for r in range(3)]
        out.append(_det3(sub))
    return out


def sigma_at(relations: list[NcPoly], p: tuple[Scalar, ...]) -> tuple[Scalar, ...] | None:
    """Unique q with f(p, q) = 0 for all relations, or None when the solution
    space is not 1-dimensional (indeterminate)."""
    from .linalg import kernel_basis

    amb = relations[0].ambient
    n = amb.n
    spec = amb.spec
    rows = []
    for f in relations:
        row = [zero(spec)] * n
        for w, c in f.terms.items():
            if len(w) != 2:
                raise NotQuadratic(f"relation {f} is not purely quadratic")
            i, j = w
            row[j] = row[j] + c * p[i]
        rows.append(row)
    ker = kernel_basis(rows, n, spec)
    if len(ker) == 0:
        raise PointNotOnScheme(f"no image for {p}")
    if len(ker) > 1:
        return None
    return normalize_point(tuple(ker[0]))


def solve_projective(polys: list[CommPoly]) -> tuple[list[tuple[Scalar, ...]], bool, str | None]:
    """All projective zeros (first nonzero coordinate 1) of homogeneous polys
    in 3 variables over the field; (points, complete, residue)."""
    if not polys:
        raise ValueError("no equations")
    nvars = polys[0].nvars
    spec = polys[0].spec
    o, z = one(spec), zero(spec)
    points: list[tuple[Scalar, ...]] = []
    complete = True
    residue = None
    for chart in range(nvars):
        charted = []
        for p in polys:
            q = p
            for i in range(chart):
                q = q.substitute_value(i, z)
            q = q.substitute_value(chart, o)
            charted.append(q)
        rest = [i for i in range(chart + 1, nvars)]
        if not rest:
            if all(q.evaluate([z] * nvars).is_zero() for q in charted if not q.is_zero()):
                pt = [z] * nvars
                pt[chart] = o
                points.append(tuple(pt))
            continue
        if all(q.is_zero() for q in charted):
            complete = False
            residue = residue or f"chart {chart}: equations vanish identically (positive-dimensional)"
            continue
        res = _solve([q for q in charted if not q.is_zero()], nvars, spec, rest)
        complete = complete and res.complete
        if res.residue and residue is None:
            residue = res.residue
        for s in res.solutions:
            pt = list(s)
            pt[chart] = o
            for i in range(chart):
                pt[i] = z
            points.append(tuple(pt))
    return points, complete, residue
