"""Exact dense univariate polynomials over the rationals.

Coefficients are stored low-to-high as :class:`fractions.Fraction`.  Real
roots are isolated with Sturm sequences and refined by exact bisection, so
every bracket returned here is certified rather than estimated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

from .errors import ContractViolation

__all__ = [
    "Var",
    "RationalPoly",
    "RootBracket",
    "as_fraction",
    "fraction_to_mpf",
    "poly_arith",
    "poly_divmod",
    "poly_gcd",
    "sturm_sequence",
    "sign_variations",
    "count_real_roots",
    "isolate_real_roots",
    "simplest_rational_between",
]


class Var(str, enum.Enum):
    R = "r"
    ZETA = "zeta"
    ENERGY = "energy"


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently import binary rounding error
    into arithmetic that is supposed to be exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ContractViolation(f"not a rational: {x!r}")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ContractViolation(f"malformed rational {x!r}") from exc
    raise ContractViolation(f"not a rational: {x!r}")


def fraction_to_mpf(q: Fraction):
    """Round a Fraction to an mpf at the current mpmath precision."""
    return mpmath.mpf(q.numerator) / q.denominator


@dataclass(frozen=True, eq=True)
class RationalPoly:
    """Dense polynomial ``sum(coeffs[i] * x**i)`` with exact coefficients."""

    coeffs: tuple
    var: Var = Var.ZETA

    def __post_init__(self):
        cs = [as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", Var(self.var))

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, var=Var.ZETA) -> "RationalPoly":
        return cls((), var)

    @classmethod
    def constant(cls, c, var=Var.ZETA) -> "RationalPoly":
        return cls((c,), var)

    @classmethod
    def x(cls, var=Var.ZETA) -> "RationalPoly":
        return cls((0, 1), var)

    @classmethod
    def from_roots(cls, roots: Iterable, var=Var.ZETA) -> "RationalPoly":
        p = cls.constant(1, var)
        for r in roots:
            p = p * cls((-as_fraction(r), 1), var)
        return p

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            if other.var != self.var:
                raise ContractViolation(
                    f"variable mismatch: {self.var.value} vs {other.var.value}"
                )
            return other
        return RationalPoly.constant(as_fraction(other), self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(
            tuple(self.coeff(i) + other.coeff(i) for i in range(n)), self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            c = as_fraction(other)
            return RationalPoly(tuple(c * a for a in self.coeffs), self.var)
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return RationalPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar division only; polynomial division goes through divmod
        if isinstance(other, RationalPoly):
            q, r = poly_divmod(self, other)
            if not r.is_zero:
                raise ContractViolation("inexact polynomial division; use divmod")
            return q
        c = as_fraction(other)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero scalar")
        return RationalPoly(tuple(a / c for a in self.coeffs), self.var)

    def __pow__(self, e: int):
        if e < 0:
            raise ContractViolation("negative polynomial power")
        out = RationalPoly.constant(1, self.var)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._coerce(other))[1]

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        try:
            return self == RationalPoly.constant(as_fraction(other), self.var)
        except ContractViolation:
            return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    # -- calculus / evaluation ----------------------------------------
    def derivative(self) -> "RationalPoly":
        return RationalPoly(
            tuple(i * c for i, c in enumerate(self.coeffs) if i > 0), self.var
        )

    def __call__(self, x):
        """Horner evaluation.

        Fraction/int arguments give exact Fractions; mpf arguments are
        evaluated at the ambient mpmath precision; other polynomials compose.
        """
        if isinstance(x, RationalPoly):
            out = RationalPoly.zero(x.var)
            for c in reversed(self.coeffs):
                out = out * x + c
            return out
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, mpmath.mpf):
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + fraction_to_mpf(c)
            return acc
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def monic(self) -> "RationalPoly":
        if self.is_zero:
            return self
        return self / self.leading

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive with integer coefficients."""
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "RationalPoly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        p = self / self.content()
        return -p if p.leading < 0 else p

    def trailing_power(self) -> int:
        """Multiplicity of the root x = 0."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def shift_down(self, k: int) -> "RationalPoly":
        """Divide by x**k; the low coefficients must vanish."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ContractViolation(f"not divisible by {self.var.value}**{k}")
        return RationalPoly(self.coeffs[k:], self.var)

    def with_var(self, var) -> "RationalPoly":
        return RationalPoly(self.coeffs, var)

    def __repr__(self):
        return f"RationalPoly({self}, var={self.var.value})"

    def __str__(self):
        if self.is_zero:
            return "0"
        name = {"r": "r", "zeta": "z", "energy": "E"}[self.var.value]
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = name if i == 1 else f"{name}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_arith(a: RationalPoly, b: RationalPoly, op: str) -> RationalPoly:
    if a.var != b.var:
        raise ContractViolation(f"variable mismatch: {a.var.value} vs {b.var.value}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ContractViolation(f"unknown op {op!r}")


def poly_divmod(a: RationalPoly, b: RationalPoly):
    """Euclidean division: returns (q, r) with a = q*b + r, deg r < deg b."""
    if a.var != b.var:
        raise ContractViolation(f"variable mismatch: {a.var.value} vs {b.var.value}")
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    lead = b.leading
    if len(rem) - 1 < db:
        return RationalPoly.zero(a.var), a
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1 - db, -1, -1):
        c = rem[i + db] / lead
        quot[i] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= c * bc
    return RationalPoly(tuple(quot), a.var), RationalPoly(tuple(rem[:db]), a.var)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd (zero if both inputs vanish)."""
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


# -- real roots ----------------------------------------------------------


def sturm_sequence(p: RationalPoly) -> list:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        r = poly_divmod(seq[-2], seq[-1])[1]
        if r.is_zero:
            break
        # positive rescaling keeps the sign pattern and stops coefficient blowup
        seq.append(-(r / abs(r.leading)))
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence[RationalPoly], x: Fraction) -> int:
    signs = [s for s in (_sign(p(x)) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RationalPoly, a, b) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (a, b]."""
    if p.is_zero:
        raise ContractViolation("zero polynomial has no isolated roots")
    sq = squarefree_part(p)
    seq = sturm_sequence(sq)
    return sign_variations(seq, as_fraction(a)) - sign_variations(seq, as_fraction(b))


def squarefree_part(p: RationalPoly) -> RationalPoly:
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    return poly_divmod(p, g)[0] if g.degree > 0 else p


def root_bound(p: RationalPoly) -> Fraction:
    """Cauchy bound: every root has modulus strictly below the return value."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part fl; recurse on reciprocals of the tails
    inner = simplest_rational_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


@dataclass(frozen=True)
class RootBracket:
    """Certified isolating interval (lo, hi] for one real root.

    ``exact`` holds the root itself when it turned out to be rational.
    """

    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None
    multiplicity: int = 1

    @property
    def approx(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_mpf(self):
        return fraction_to_mpf(self.approx)

    def __float__(self):
        return float(self.approx)


def _refine(q: RationalPoly, lo: Fraction, hi: Fraction, tol: Fraction):
    """Bisect a bracket (lo, hi] holding exactly one root of squarefree ``q``."""
    if q(hi) == 0:
        return hi, hi, hi
    s_hi = _sign(q(hi))
    while hi - lo > tol or q(lo) == 0:
        mid = (lo + hi) / 2
        v = q(mid)
        if v == 0:
            return mid, mid, mid
        if _sign(v) == s_hi:
            hi = mid
        else:
            lo = mid
    cand = simplest_rational_between(lo, hi)
    if lo < cand <= hi and q(cand) == 0:
        return cand, cand, cand
    return lo, hi, None


def isolate_real_roots(p: RationalPoly, tol) -> list:
    """Isolate and refine every distinct real root of ``p``.

    Returns ascending :class:`RootBracket` objects with ``hi - lo <= tol``
    (zero width when the root is found exactly).
    """
    tol = as_fraction(tol)
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    if p.is_zero:
        raise ContractViolation("zero polynomial has no isolated roots")
    if p.degree == 0:
        return []
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    bound = root_bound(q)
    stack = [(-bound, bound, sign_variations(seq, -bound) - sign_variations(seq, bound))]
    isolated = []
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            isolated.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = sign_variations(seq, mid)
        stack.append((lo, mid, sign_variations(seq, lo) - vmid))
        stack.append((mid, hi, vmid - sign_variations(seq, hi)))
    out = []
    for lo, hi in sorted(isolated):
        a, b, exact = _refine(q, lo, hi, tol)
        mult = _multiplicity(p, a, b, exact)
        out.append(RootBracket(a, b, exact, mult))
    return out


def _multiplicity(p: RationalPoly, lo, hi, exact) -> int:
    # a root of p is repeated iff it is also a root of gcd(p, p')
    m = 1
    g = poly_gcd(p, p.derivative())
    while g.degree > 0:
        if exact is not None:
            if g(exact) != 0:
                break
        elif count_real_roots(g, lo, hi) == 0:
            break
        m += 1
        g = poly_gcd(g, g.derivative())
    return m
