"""Exact coefficient arithmetic over Q and quadratic extensions Q(sqrt(d)).

Every scalar is a + b*sqrt(d) with a, b rational; over plain Q the b part
is identically zero.  All operations are exact -- no floats anywhere in the
arithmetic path.  Scalars from different fields never mix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class FieldMismatch(Exception):
    pass


class DivisionByZero(Exception):
    pass


def _squarefree_core(n: int) -> tuple[int, int]:
    """Write n = m^2 * d with d squarefree; return (d, m).  n must be nonzero."""
    if n == 0:
        raise ValueError("0 has no squarefree core")
    sign = -1 if n < 0 else 1
    n = abs(n)
    m = 1
    d = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        m *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= n
    return sign * d, m


@dataclass(frozen=True, slots=True)
class FieldSpec:
    """Q (d is None) or Q(sqrt(d)) for a squarefree integer d != 0, 1."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None:
            if self.d in (0, 1):
                raise ValueError("d must be a nonzero squarefree integer != 1")
            core, m = _squarefree_core(self.d)
            if m != 1:
                raise ValueError(f"d={self.d} is not squarefree")

    @property
    def is_rational(self) -> bool:
        return self.d is None

    def __str__(self):
        if self.d is None:
            return "Q"
        if self.d == -1:
            return "Q(i)"
        return f"Q(sqrt {self.d})"


QQ = FieldSpec()
QI = FieldSpec(-1)


def _coerce_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to Fraction")


@dataclass(frozen=True, slots=True)
class Scalar:
    """Element a + b*sqrt(d) of the field given by spec."""

    a: Fraction
    b: Fraction
    spec: FieldSpec

    def __post_init__(self):
        if self.spec.is_rational and self.b != 0:
            raise ValueError("rational scalar with nonzero sqrt part")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(x, spec: FieldSpec) -> "Scalar":
        if isinstance(x, Scalar):
            if x.spec != spec:
                raise FieldMismatch(f"{x.spec} vs {spec}")
            return x
        return Scalar(_coerce_fraction(x), Fraction(0), spec)

    @staticmethod
    def sqrt_part(x, spec: FieldSpec) -> "Scalar":
        """x * sqrt(d) in Q(sqrt d)."""
        if spec.is_rational:
            raise FieldMismatch("sqrt part requires a quadratic extension")
        return Scalar(Fraction(0), _coerce_fraction(x), spec)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def is_rational_value(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Scalar"):
        if self.spec != other.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.a + other.a, self.b + other.b, self.spec)

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.a - other.a, self.b - other.b, self.spec)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, self.spec)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if self.spec.is_rational:
            return Scalar(self.a * other.a, Fraction(0), self.spec)
        d = self.spec.d
        return Scalar(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            self.spec,
        )

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of 0")
        if self.spec.is_rational:
            return Scalar(1 / self.a, Fraction(0), self.spec)
        # norm a^2 - d b^2 is nonzero for squarefree d != 1
        n = self.a * self.a - self.spec.d * self.b * self.b
        return Scalar(self.a / n, -self.b / n, self.spec)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return self * other.inverse()

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.spec)

    # -- misc ----------------------------------------------------------------

    def to_complex(self) -> complex:
        """Float embedding (sqrt(d) -> i*sqrt(|d|) for d < 0); sanity checks only."""
        if self.spec.is_rational:
            return complex(self.a)
        d = self.spec.d
        root = math.sqrt(d) if d > 0 else 1j * math.sqrt(-d)
        return complex(self.a) + complex(self.b) * root

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.spec.d == -1:
            root = "i"
        else:
            root = f"sqrt({self.spec.d})"
        bpart = root if self.b == 1 else (f"-{root}" if self.b == -1 else f"{self.b}*{root}")
        if self.a == 0:
            return bpart
        sign = "+" if self.b > 0 else ""
        return f"{self.a}{sign}{bpart}"

    __repr__ = __str__


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def scalar_sqrt(x: Scalar) -> Scalar | None:
    """A square root of x inside its own field, or None when there is none."""
    spec = x.spec
    if x.is_zero():
        return zero(spec)
    if spec.is_rational:
        r = _fraction_sqrt(x.a)
        return None if r is None else Scalar(r, Fraction(0), spec)
    d = spec.d
    if x.b == 0:
        r = _fraction_sqrt(x.a)
        if r is not None:
            return Scalar(r, Fraction(0), spec)
        r = _fraction_sqrt(x.a / d)
        if r is not None:
            return Scalar(Fraction(0), r, spec)
        return None
    # (u + v sqrt(d))^2 = x: u^2 = (a +- sqrt(a^2 - d b^2)) / 2, v = b/(2u)
    n = _fraction_sqrt(x.a * x.a - d * x.b * x.b)
    if n is None:
        return None
    for sign in (1, -1):
        u2 = (x.a + sign * n) / 2
        u = _fraction_sqrt(u2)
        if u is not None and u != 0:
            v = x.b / (2 * u)
            cand = Scalar(u, v, spec)
            if cand * cand == x:
                return cand
    return None


def zero(spec: FieldSpec) -> Scalar:
    return Scalar(Fraction(0), Fraction(0), spec)


def one(spec: FieldSpec) -> Scalar:
    return Scalar(Fraction(1), Fraction(0), spec)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch form of field arithmetic; op in '+ - * /'."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b.is_zero():
            raise DivisionByZero("division by zero scalar")
        return a / b
    raise ValueError(f"unknown op {op!r}")
