"""Radial weight function of the Heun operator and its Kummer-function integrals.

With sigma(r) = r(a1 + a2 r) the Heun operator can be written as
(1/w)(sigma w f')' - (e1 r + e0) f, where

    w(r) = r^p e^{lam r} (a1 + a2 r)^s,
    p = b0/a1 - 1,  lam = b2/a2,  s = b1/a2 - a1 b2/a2^2 - b0/a1 - 1.

The support is (0, inf) when a1 a2 > 0 and (0, -a1/a2) when a1 a2 < 0.
Moments of w reduce to Tricomi U (infinite support) or Kummer M (finite
support); both closed forms are checked here against direct quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import ContractViolation, WeightDomainError
from .heun import GcheParams, coefficients, epsilon0_roots
from .numeric import resolve_digits
from .oracle.quadrature import quadrature
from .oracle.special import kummer_m, kummer_u
from .polycore import RationalPoly, Var

__all__ = [
    "RadialWeight",
    "DerivedExponents",
    "derive_exponents",
    "self_adjoint_check",
    "weight_eval",
    "normalization_closed_form",
    "normalization_quadrature",
    "overlap_moments",
    "OverlapResult",
    "eigenfunction_orthogonality",
]


@dataclass(frozen=True)
class DerivedExponents:
    """Exponents A, B, C of sigma*w = r^A e^{B r} (a1 + a2 r)^C.

    They solve A a1 = b0, B a2 = b2 and A a2 + B a1 + C a2 = b1, which is
    what (sigma w)' = (b2 r^2 + b1 r + b0) w requires.  The weight itself
    carries exponents (A - 1, B, C - 1).
    """

    A: Fraction
    B: Fraction
    C: Fraction

    @property
    def weight_exponents(self):
        return (self.A - 1, self.B, self.C - 1)


def derive_exponents(params: GcheParams) -> DerivedExponents:
    a2, a1, b2, b1, b0 = params.as_tuple()
    if a1 == 0 or a2 == 0:
        raise WeightDomainError("the power-law weight needs a1 != 0 and a2 != 0")
    A = b0 / a1
    B = b2 / a2
    C = (b1 - A * a2 - B * a1) / a2
    return DerivedExponents(A, B, C)


def self_adjoint_check(params: GcheParams) -> bool:
    """Exact check that (sigma w)'/w equals the first-derivative coefficient.

    For w = r^{A-1} e^{Br} (a1+a2 r)^{C-1},
    (sigma w)'/w = A(a1+a2 r) + B r (a1+a2 r) + C a2 r, a polynomial in r.
    """
    ex = derive_exponents(params)
    a2, a1, b2, b1, b0 = params.as_tuple()
    r = RationalPoly.x(Var.R)
    lin = r * a2 + a1
    lhs = lin * ex.A + r * lin * ex.B + r * (ex.C * a2)
    rhs = RationalPoly((b0, b1, b2), Var.R)
    p, lam, s = ex.weight_exponents
    closed = (
        p == b0 / a1 - 1
        and lam == b2 / a2
        and s == b1 / a2 - a1 * b2 / a2**2 - b0 / a1 - 1
    )
    return lhs == rhs and closed


@dataclass(frozen=True)
class RadialWeight:
    params: GcheParams
    p: Fraction
    lam: Fraction
    s: Fraction
    length: Fraction | None

    @classmethod
    def from_params(cls, params: GcheParams) -> "RadialWeight":
        ex = derive_exponents(params)
        p, lam, s = ex.weight_exponents
        a1, a2 = params.alpha1, params.alpha2
        length = None if a1 * a2 > 0 else -a1 / a2
        return cls(params, p, lam, s, length)

    @property
    def finite(self) -> bool:
        return self.length is not None

    @property
    def domain(self):
        return (0.0, math.inf if self.length is None else float(self.length))

    # Kummer parameters shared by the closed forms
    @property
    def a(self) -> Fraction:
        return self.p + 1

    @property
    def b(self) -> Fraction:
        return self.p + self.s + 2

    @property
    def z(self) -> Fraction:
        a2, a1 = self.params.alpha2, self.params.alpha1
        return -a1 * self.params.beta2 / a2**2

    def flags(self) -> dict:
        """Integrability conditions, each named by the inequality it tests."""
        out = {"b0/a1 > 0": self.p > -1, "a1 > 0": self.params.alpha1 > 0}
        if self.finite:
            out["s > -1"] = self.s > -1
        else:
            out["b2/a2 < 0"] = self.lam < 0
        return out

    @property
    def integrable(self) -> bool:
        return all(self.flags().values())

    def require_integrable(self):
        bad = [k for k, ok in self.flags().items() if not ok]
        if bad:
            raise WeightDomainError("weight not integrable: violates " + ", ".join(bad))

    def log_eval(self, r: float, dist: float | None = None) -> float:
        """log w(r); ``dist`` is the distance to a finite right endpoint."""
        a1, a2 = float(self.params.alpha1), float(self.params.alpha2)
        lin = abs(a2) * dist if (self.finite and dist is not None) else a1 + a2 * r
        return float(self.p) * math.log(r) + float(self.lam) * r + float(self.s) * math.log(lin)


def weight_eval(w: RadialWeight, r: float) -> float:
    lo, hi = w.domain
    if not lo < r < hi:
        raise ContractViolation(f"r = {r} outside the open domain ({lo}, {hi})")
    if w.params.alpha1 + w.params.alpha2 * Fraction(r) <= 0:
        raise ContractViolation("a1 + a2 r must be positive")
    return math.exp(w.log_eval(r))


# -- closed forms ----------------------------------------------------------------


def _closed(w: RadialWeight, shift: int, u_method: str) -> float:
    a1 = float(w.params.alpha1)
    s = float(w.s)
    a = float(w.a) + shift
    b = float(w.b) + shift
    z = float(w.z)
    if not w.finite:
        if not (w.params.alpha1 > 0 and w.params.alpha2 > 0):
            raise WeightDomainError("infinite-domain closed form needs a1 > 0 and a2 > 0")
        if not a > 0:
            raise WeightDomainError("infinite-domain closed form needs b0/a1 > 0")
        if not z > 0:
            raise WeightDomainError("infinite-domain closed form needs a1 b2/a2^2 < 0")
        ratio = float(w.params.alpha1 / w.params.alpha2)
        return a1**s * ratio**a * math.gamma(a) * kummer_u(a, b, z, method=u_method)
    if not (w.params.alpha1 > 0 and w.params.alpha2 < 0):
        raise WeightDomainError("finite-domain closed form needs a1 > 0 and a2 < 0")
    if not a > 0:
        raise WeightDomainError("finite-domain closed form needs b0/a1 > 0")
    if not s > -1:
        raise WeightDomainError("finite-domain closed form needs s > -1")
    length = float(w.length)
    log_pref = s * math.log(a1) + a * math.log(length) + math.lgamma(a) + math.lgamma(s + 1) - math.lgamma(b)
    return math.exp(log_pref) * kummer_m(a, b, z)


def normalization_closed_form(w: RadialWeight) -> float:
    """Integral of w over its domain from the Gamma-times-Kummer closed form."""
    return _closed(w, 0, "integral")


def _moment_quadrature(w: RadialWeight, power_shift: int, abs_tol: float) -> float:
    w.require_integrable()
    p = float(w.p) + power_shift
    lam = float(w.lam)

    def log_core(r):
        return p * math.log(r) + lam * r

    if w.finite:
        a2 = float(w.params.alpha2)
        s = float(w.s)

        def f(r, d):
            if r <= 0.0 or d <= 0.0:
                return 0.0
            return math.exp(log_core(r) + s * math.log(abs(a2) * d))

        res = quadrature(f, 0.0, float(w.length), tol=abs_tol, rel_tol=1e-13, complement=True)
        if res.error > 1e-11 * abs(res.value):
            res = quadrature(f, 0.0, float(w.length), tol=1e-13 * abs(res.value), rel_tol=1e-13, complement=True)
        return res.value

    def g(r):
        if r <= 0.0:
            return 0.0
        return math.exp(log_core(r) + float(w.s) * math.log(float(w.params.alpha1) + float(w.params.alpha2) * r))

    scale = max(1.0, (p + 1) / abs(lam)) if lam != 0 else 1.0
    res = quadrature(g, 0.0, math.inf, tol=abs_tol, rel_tol=1e-13, scale=scale)
    if res.error > 1e-11 * abs(res.value):
        res = quadrature(g, 0.0, math.inf, tol=1e-13 * abs(res.value), rel_tol=1e-13, scale=scale)
    return res.value


def normalization_quadrature(w: RadialWeight, abs_tol: float = 1e-10) -> float:
    return _moment_quadrature(w, 0, abs_tol)


@dataclass(frozen=True)
class OverlapResult:
    closed: float
    quadrature: float

    @property
    def rel_gap(self) -> float:
        return abs(self.closed - self.quadrature) / abs(self.quadrature)


def overlap_moments(w: RadialWeight, i: int, j: int, abs_tol: float = 1e-10) -> OverlapResult:
    """Integral of r^{i+j} w(r) by closed form and by quadrature.

    Finite support uses the Kummer M form with a, b shifted by i+j.  Infinite
    support writes U as its two-term combination of M values, which needs
    b + i + j to be non-integral.
    """
    if i < 0 or j < 0:
        raise ContractViolation("i and j must be nonnegative")
    shift = i + j
    if not w.finite and (w.b + shift).denominator == 1:
        raise WeightDomainError("two-term M form needs b0/a1-shifted b to be non-integral")
    closed = _closed(w, shift, "connection")
    quad = _moment_quadrature(w, shift, abs_tol)
    return OverlapResult(closed, quad)


# -- orthogonality of polynomial solutions -------------------------------------------


def eigenfunction_orthogonality(params: GcheParams, n: int, roots=None, digits=None, abs_tol=1e-12):
    """Gram matrix of the degree-n polynomial solutions under w.

    All solutions share the Heun coefficients and differ only in e0.
    Returns (gram, normalized) where normalized[i][j] = G_ij/sqrt(G_ii G_jj).
    """
    w = RadialWeight.from_params(params)
    w.require_integrable()
    digits = resolve_digits(digits)
    if roots is None:
        roots = epsilon0_roots(params, n, digits=digits).epsilon0_roots
    polys = []
    with mpmath.workdps(digits):
        for idx, root in enumerate(roots, start=1):
            sol = coefficients(params, n, root, root_index=idx, digits=digits, sample_points=[])
            polys.append([float(c) for c in sol.coefficients])

    def horner(cs, r):
        acc = 0.0
        for c in reversed(cs):
            acc = acc * r + c
        return acc

    m = len(polys)
    gram = [[0.0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            ci, cj = polys[i], polys[j]
            if w.finite:

                def f(r, d, ci=ci, cj=cj):
                    if r <= 0.0 or d <= 0.0:
                        return 0.0
                    return horner(ci, r) * horner(cj, r) * math.exp(w.log_eval(r, d))

                res = quadrature(f, 0.0, float(w.length), tol=abs_tol, rel_tol=1e-13, complement=True)
            else:

                def f(r, ci=ci, cj=cj):
                    if r <= 0.0:
                        return 0.0
                    return horner(ci, r) * horner(cj, r) * math.exp(w.log_eval(r))

                scale = max(1.0, (float(w.p) + 2 * n + 1) / abs(float(w.lam)))
                res = quadrature(f, 0.0, math.inf, tol=abs_tol, rel_tol=1e-13, scale=scale)
            gram[i][j] = gram[j][i] = res.value
    normalized = [
        [gram[i][j] / math.sqrt(gram[i][i] * gram[j][j]) for j in range(m)] for i in range(m)
    ]
    return gram, normalized
