"""Polynomial solutions of the generalized confluent Heun equation.

The equation is

    r(a2 r + a1) f'' + (b2 r^2 + b1 r + b0) f' - (e1 r + e0) f = 0.

A degree-n polynomial solution needs e1 = n*b2 and e0 must be a root of the
characteristic polynomial Delta_{n+1}(e0) of an (n+1)x(n+1) tridiagonal
matrix.  Everything up to root isolation is exact; coefficients at
irrational roots are computed in mpmath at a configurable precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import ContractViolation, SingularPivotError, SolvabilityError
from .numeric import resolve_digits, to_mpf, workdps
from .polycore import RationalPoly, RootBracket, Var, as_fraction, isolate_real_roots

__all__ = [
    "GcheParams",
    "TridiagonalSystem",
    "SolvabilityCondition",
    "PolySolution",
    "necessary_condition",
    "delta_sequence",
    "tridiagonal_system",
    "tridiagonal_determinant",
    "epsilon0_roots",
    "coefficients",
    "solution_polynomial",
    "ode_residual",
    "interlacing_report",
]


@dataclass(frozen=True)
class GcheParams:
    alpha2: Fraction
    alpha1: Fraction
    beta2: Fraction
    beta1: Fraction
    beta0: Fraction

    def __post_init__(self):
        for name in ("alpha2", "alpha1", "beta2", "beta1", "beta0"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.alpha1 == 0 and self.alpha2 == 0:
            raise ContractViolation("alpha1 and alpha2 cannot both vanish")

    def as_tuple(self):
        return (self.alpha2, self.alpha1, self.beta2, self.beta1, self.beta0)

    def as_dict(self):
        return {
            "alpha2": str(self.alpha2),
            "alpha1": str(self.alpha1),
            "beta2": str(self.beta2),
            "beta1": str(self.beta1),
            "beta0": str(self.beta0),
        }


def _check_n(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ContractViolation(f"degree n must be a nonnegative integer, got {n!r}")


def necessary_condition(params: GcheParams, n: int) -> Fraction:
    """The value of e1 that a degree-n polynomial solution forces."""
    _check_n(n)
    return n * params.beta2


# -- tridiagonal structure ------------------------------------------------


def _diag(params, j) -> RationalPoly:
    # S_j as a polynomial in e0
    return RationalPoly((j * ((j - 1) * params.alpha2 + params.beta1), -1), Var.ZETA)


def _super(params, j) -> Fraction:
    return j * ((j - 1) * params.alpha1 + params.beta0)


def _sub(params, n, j) -> Fraction:
    return -(n - j + 1) * params.beta2


@dataclass(frozen=True)
class TridiagonalSystem:
    """Row j reads gamma_j C_{j-1} + S_j C_j + T_{j+1} C_{j+1} = 0.

    ``diag[j]`` is S_j for j = 0..n, ``upper[j]`` is T_j for j = 1..n+1
    (``upper[0]`` is unused and zero) and ``lower[j]`` is gamma_j for
    j = 0..n (``lower[0]`` multiplies the absent C_{-1}).
    """

    n: int
    diag: tuple
    upper: tuple
    lower: tuple

    @property
    def size(self) -> int:
        return self.n + 1

    def matrix(self):
        """Square matrix of RationalPoly entries in e0."""
        size = self.size
        zero = RationalPoly.zero(Var.ZETA)
        rows = [[zero] * size for _ in range(size)]
        for j in range(size):
            rows[j][j] = self.diag[j]
            if j + 1 < size:
                rows[j][j + 1] = RationalPoly.constant(self.upper[j + 1], Var.ZETA)
            if j >= 1:
                rows[j][j - 1] = RationalPoly.constant(self.lower[j], Var.ZETA)
        return rows

    def off_products(self):
        """T_j * gamma_j for j = 1..n; all positive means real simple roots."""
        return [self.upper[j] * self.lower[j] for j in range(1, self.n + 1)]


def tridiagonal_system(params: GcheParams, n: int) -> TridiagonalSystem:
    _check_n(n)
    diag = tuple(_diag(params, j) for j in range(n + 1))
    upper = tuple(_super(params, j) if j else Fraction(0) for j in range(n + 2))
    lower = tuple(_sub(params, n, j) for j in range(n + 1))
    return TridiagonalSystem(n, diag, upper, lower)


def delta_sequence(params: GcheParams, n: int) -> list:
    """Leading principal minors of the tridiagonal matrix.

    Returns ``[D_{-1}, D_0, ..., D_{n+1}]`` as polynomials in e0, so the
    list index is one more than the subscript.  The continuant is

        D_{j+1} = S_j D_j + j b2 (n-j+1)((j-1) a1 + b0) D_{j-1},

    the plus sign being what the determinant expansion gives, since
    -T_j gamma_j = +j b2 (n-j+1)((j-1) a1 + b0).
    """
    _check_n(n)
    seq = [RationalPoly.zero(Var.ZETA), RationalPoly.constant(1, Var.ZETA)]
    for j in range(n + 1):
        coupling = j * params.beta2 * (n - j + 1) * ((j - 1) * params.alpha1 + params.beta0)
        seq.append(_diag(params, j) * seq[-1] + coupling * seq[-2])
    return seq


def tridiagonal_determinant(matrix) -> RationalPoly:
    """Exact determinant by Laplace expansion along the first row.

    Zero entries are skipped, so a tridiagonal matrix costs only a
    Fibonacci-sized number of terms.
    """
    size = len(matrix)
    if size == 0:
        return RationalPoly.constant(1, Var.ZETA)
    if size == 1:
        return matrix[0][0]
    total = RationalPoly.zero(matrix[0][0].var)
    for col, entry in enumerate(matrix[0]):
        if entry.is_zero:
            continue
        minor = [row[:col] + row[col + 1 :] for row in matrix[1:]]
        term = entry * tridiagonal_determinant(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


# -- roots ------------------------------------------------------------------


@dataclass(frozen=True)
class SolvabilityCondition:
    degree_n: int
    epsilon1: Fraction
    epsilon0_roots: tuple
    characteristic: RationalPoly
    real_simple_guaranteed: bool

    @property
    def root_count(self) -> int:
        return len(self.epsilon0_roots)


def default_tol(digits=None) -> Fraction:
    return Fraction(1, 10 ** resolve_digits(digits))


def epsilon0_roots(params: GcheParams, n: int, tol=None, digits=None) -> SolvabilityCondition:
    """Isolate every real root of D_{n+1}(e0), ascending.

    When every T_j gamma_j is positive the matrix is similar to a real
    symmetric Jacobi matrix, so exactly n+1 simple real roots must appear;
    anything else raises :class:`SolvabilityError`.
    """
    _check_n(n)
    tol = default_tol(digits) if tol is None else as_fraction(tol)
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    char = delta_sequence(params, n)[-1]
    roots = tuple(isolate_real_roots(char, tol))
    guaranteed = all(p > 0 for p in tridiagonal_system(params, n).off_products())
    if guaranteed:
        if len(roots) != n + 1 or any(b.multiplicity != 1 for b in roots):
            raise SolvabilityError(
                f"expected {n + 1} simple real roots, found {len(roots)}"
            )
    return SolvabilityCondition(n, necessary_condition(params, n), roots, char, guaranteed)


# -- coefficients -----------------------------------------------------------


@dataclass(frozen=True)
class PolySolution:
    """Coefficients C_0..C_n of a polynomial solution at one e0.

    ``exact`` is True when e0 was rational and every C_j is a Fraction.
    ``overflow`` is the C_{n+1} implied by the last row of the recurrence;
    it vanishes exactly at a rational root and to working precision at an
    irrational one.
    """

    degree_n: int
    root_index: int | None
    epsilon0: object
    coefficients: tuple
    overflow: object
    exact: bool
    digits: int
    residual_sup: object = None
    consistent: bool = field(default=True)

    def polynomial(self) -> RationalPoly:
        if not self.exact:
            raise ContractViolation("coefficients are not exact rationals")
        return RationalPoly(self.coefficients, Var.R)

    def __call__(self, r):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * r + c
        return acc


def _pivot(params, j):
    return (j + 1) * (j * params.alpha1 + params.beta0)


def coefficients(
    params: GcheParams,
    n: int,
    epsilon0,
    root_index: int | None = None,
    digits=None,
    sample_points: Sequence | None = None,
) -> PolySolution:
    """Run the three-term coefficient recurrence at a given e0.

    ``epsilon0`` may be a Fraction/int (exact arithmetic), a
    :class:`RootBracket` (exact if the root is rational) or anything mpmath
    accepts.
    """
    _check_n(n)
    digits = resolve_digits(digits)
    if isinstance(epsilon0, RootBracket) and epsilon0.exact is not None:
        epsilon0 = epsilon0.exact
    exact = isinstance(epsilon0, (int, Fraction)) and not isinstance(epsilon0, bool)
    for j in range(n + 1):
        if _pivot(params, j) == 0:
            raise SingularPivotError(j)

    def run(e0, conv):
        a2, a1, b2, b1, b0 = (conv(x) for x in params.as_tuple())
        prev, cur = conv(0), conv(1)
        cs = [cur]
        for j in range(n + 1):
            diag = j * (j - 1) * a2 + j * b1 - e0
            low = (j - 1) * b2 - n * b2
            nxt = -(diag * cur + low * prev) / ((j + 1) * (j * a1 + b0))
            prev, cur = cur, nxt
            cs.append(cur)
        return cs

    with workdps(digits):
        if exact:
            e0 = Fraction(epsilon0)
            cs = run(e0, Fraction)
            overflow = cs[-1]
            consistent = overflow == 0
        else:
            e0 = to_mpf(epsilon0)
            cs = run(e0, to_mpf)
            overflow = cs[-1]
            scale = max(abs(c) for c in cs[:-1])
            consistent = abs(overflow) <= scale * mpmath.mpf(10) ** (-(digits - 10))
        sol = PolySolution(
            degree_n=n,
            root_index=root_index,
            epsilon0=e0,
            coefficients=tuple(cs[:-1]),
            overflow=overflow,
            exact=exact,
            digits=digits,
            consistent=consistent,
        )
        pts = sample_points if sample_points is not None else _default_samples(params)
        res = ode_residual(params, sol, pts)
    return PolySolution(**{**sol.__dict__, "residual_sup": res})


def _default_samples(params):
    # stay inside the domain of the weight when it is finite
    if params.alpha1 * params.alpha2 < 0:
        length = -params.alpha1 / params.alpha2
        return [length * Fraction(i, 8) for i in range(1, 8)]
    return [Fraction(i, 4) for i in range(0, 9)]


def solution_polynomial(params: GcheParams, n: int, epsilon0) -> RationalPoly:
    """Exact f_n(r) for rational e0."""
    sol = coefficients(params, n, as_fraction(epsilon0), sample_points=[])
    return sol.polynomial()


def ode_residual(params: GcheParams, sol: PolySolution, sample_points) -> object:
    """Largest |L f| over the sample points, L being the Heun operator."""
    n = sol.degree_n
    e1 = necessary_condition(params, n)
    if not sample_points:
        return Fraction(0) if sol.exact else mpmath.mpf(0)
    if sol.exact:
        f = sol.polynomial()
        r = RationalPoly.x(Var.R)
        a2, a1, b2, b1, b0 = params.as_tuple()
        lf = (
            r * (r * a2 + a1) * f.derivative().derivative()
            + (r * r * b2 + r * b1 + b0) * f.derivative()
            - (r * e1 + sol.epsilon0) * f
        )
        return max(abs(lf(as_fraction(x))) for x in sample_points)
    with workdps(sol.digits):
        a2, a1, b2, b1, b0 = (to_mpf(x) for x in params.as_tuple())
        e1m = to_mpf(e1)
        e0 = to_mpf(sol.epsilon0)
        cs = [to_mpf(c) for c in sol.coefficients]
        worst = mpmath.mpf(0)
        for x in sample_points:
            x = to_mpf(x)
            f = df = d2f = mpmath.mpf(0)
            for c in reversed(cs):
                d2f = d2f * x + 2 * df
                df = df * x + f
                f = f * x + c
            val = x * (a2 * x + a1) * d2f + (b2 * x * x + b1 * x + b0) * df - (e1m * x + e0) * f
            worst = max(worst, abs(val))
        return worst


# -- interlacing --------------------------------------------------------------


@dataclass(frozen=True)
class InterlacingReport:
    degree_n: int
    regime_positive: bool
    outer_roots: tuple
    inner_roots: tuple
    strictly_interlaced: bool


def _certainly_below(a: RootBracket, b: RootBracket) -> bool:
    # a root lies in (lo, hi], or equals lo == hi when found exactly
    if a.hi < b.lo:
        return True
    return a.hi == b.lo and b.exact is None


def _strictly_interlaced(outer, inner) -> bool:
    if len(inner) != len(outer) - 1:
        return False
    return all(
        _certainly_below(outer[i], x) and _certainly_below(x, outer[i + 1])
        for i, x in enumerate(inner)
    )


def interlacing_report(params: GcheParams, n: int, tol=None) -> InterlacingReport:
    """Compare the roots of D_{n+1} and D_n built from the same matrix.

    Strict interlacing is only a theorem when every T_j gamma_j is
    positive; otherwise the outcome is reported without being asserted.
    """
    if n < 1:
        raise ContractViolation("interlacing needs n >= 1")
    tol = Fraction(1, 10**30) if tol is None else as_fraction(tol)
    seq = delta_sequence(params, n)
    outer = tuple(isolate_real_roots(seq[-1], tol))
    inner = tuple(isolate_real_roots(seq[-2], tol))
    regime = all(p > 0 for p in tridiagonal_system(params, n).off_products())
    return InterlacingReport(n, regime, outer, inner, _strictly_interlaced(outer, inner))
