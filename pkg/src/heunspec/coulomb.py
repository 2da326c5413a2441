"""Quasi-exact spectra of the d-dimensional softcore Coulomb potential.

In scaled units the radial problem is

    [-d^2/dr^2 + (k-1)(k-3)/(4 r^2) - v/(r+1)] psi = E psi,   k = d + 2l,

and the ansatz psi = r^{(k-1)/2} e^{-Er} f(r) with E = -Er^2 (written
``energy`` below, a positive number) turns it into a confluent Heun equation
with a1 = a2 = 1.  A degree-n polynomial f exists iff v = (2n+k-1) energy and
energy is a root of the critical polynomial P_{n+1}(energy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import ContractViolation, FactorizationError, SolvabilityError
from .heun import GcheParams, delta_sequence, tridiagonal_determinant
from .numeric import resolve_digits, to_mpf, workdps
from .oracle.special import laguerre, laguerre_roots
from .polycore import RationalPoly, RootBracket, Var, as_fraction, count_real_roots, isolate_real_roots

__all__ = [
    "CoulombProblem",
    "CoulombMapping",
    "SpectralLine",
    "to_gche",
    "coupling_condition",
    "energy_polynomials",
    "reduced_critical_polynomial",
    "spectrum",
    "line_coefficients",
    "wavefunction",
    "schrodinger_residual",
    "coulomb_quotients",
    "determinant_polynomial",
    "heun_root_agreement",
    "LaguerreReduction",
    "laguerre_reduction",
]

E = Var.ENERGY


@dataclass(frozen=True)
class CoulombProblem:
    d: int
    ell: int
    n: int

    def __post_init__(self):
        for name in ("d", "ell", "n"):
            val = getattr(self, name)
            if not isinstance(val, int) or isinstance(val, bool):
                raise ContractViolation(f"{name} must be an integer")
        if self.d <= 1:
            raise ContractViolation("dimension d must exceed 1")
        if self.ell < 0 or self.n < 0:
            raise ContractViolation("ell and n must be nonnegative")

    @property
    def k(self) -> int:
        return self.d + 2 * self.ell

    @classmethod
    def from_k(cls, k: int, n: int) -> "CoulombProblem":
        return cls(k, 0, n)


@dataclass(frozen=True)
class CoulombMapping:
    params: GcheParams
    epsilon1: Fraction
    epsilon0: Fraction
    coupling: Fraction


def to_gche(prob: CoulombProblem, energy, v=None) -> CoulombMapping:
    """Heun coefficients at a rational energy.

    Without ``v`` the coupling is the one that makes a degree-n polynomial
    possible, (2n+k-1) * energy.
    """
    energy = as_fraction(energy)
    k = prob.k
    params = GcheParams(1, 1, -2 * energy, k - 1 - 2 * energy, k - 1)
    if v is None:
        v = (2 * prob.n + k - 1) * energy
    v = as_fraction(v)
    return CoulombMapping(params, (k - 1) * energy - v, (k - 1) * energy, v)


def coupling_condition(prob: CoulombProblem) -> RationalPoly:
    """Solve e1 = n b2 for v symbolically; returns v as a polynomial in energy.

    e1 = (k-1) energy - v and b2 = -2 energy, so v = (k-1) energy + 2n energy.
    The result is checked against (2n+k-1) energy.
    """
    x = RationalPoly.x(E)
    k, n = prob.k, prob.n
    b2 = x * -2
    v = x * (k - 1) - b2 * n
    if v != x * (2 * n + k - 1):
        raise ContractViolation("coupling condition mismatch")
    return v


def energy_polynomials(prob: CoulombProblem, m: int | None = None) -> list:
    """P_0..P_m in the energy variable (m defaults to n+1, the critical one)."""
    m = prob.n + 1 if m is None else m
    if m < 0:
        raise ContractViolation("m must be nonnegative")
    k, n = prob.k, prob.n
    x = RationalPoly.x(E)
    polys = [RationalPoly.zero(E), RationalPoly.constant(1, E)]
    for j in range(m):
        nxt = (x * (k + 2 * j - 1) - j * (j + k - 2)) * polys[-1] - x * (
            2 * j * (n + 1 - j) * (j + k - 2)
        ) * polys[-2]
        polys.append(nxt)
    return polys[1:]


def reduced_critical_polynomial(prob: CoulombProblem) -> RationalPoly:
    """P_{n+1} with its trivial factor energy*(k-1)*(k+2n-1) divided out."""
    if prob.n < 1:
        raise ContractViolation("the reduced critical polynomial needs n >= 1")
    k, n = prob.k, prob.n
    crit = energy_polynomials(prob, n + 1)[n + 1]
    return crit.shift_down(1) / ((k - 1) * (k + 2 * n - 1))


@dataclass(frozen=True)
class SpectralLine:
    """One closed-form eigenvalue and its polynomial factor.

    ``energy`` is a Fraction when the root is rational and an mpf otherwise;
    ``index`` is 1-based in ascending energy.
    """

    index: int
    bracket: RootBracket
    energy: object
    coupling: object
    eigenvalue: object
    coefficients: tuple
    node_count: int
    digits: int

    @property
    def exact(self) -> bool:
        return isinstance(self.energy, Fraction)


def line_coefficients(prob: CoulombProblem, energy) -> list:
    """C_0..C_n from the normalized recurrence (C_0 = 1)."""
    k, n = prob.k, prob.n
    cs = [energy * 0 + 1]
    prev = energy * 0
    for j in range(n):
        den = (j + 1) * (j + k - 1)
        nxt = ((2 * j + k - 1) * energy - j * (j + k - 2)) / den * cs[-1] - (
            2 * (n + 1 - j) * energy / den
        ) * prev
        prev = cs[-1]
        cs.append(nxt)
    return cs


def _node_count(prob: CoulombProblem, bracket: RootBracket) -> int:
    # zeros of f_n on (0, inf), from an exact rational stand-in for the root
    cs = line_coefficients(prob, bracket.approx)
    f = RationalPoly(tuple(cs), Var.R)
    if f.degree < 1:
        return 0
    bound = 1 + max(abs(c / f.leading) for c in f.coeffs[:-1])
    return count_real_roots(f, 0, bound)


def spectrum(prob: CoulombProblem, tol=None, digits=None) -> list:
    """Closed-form lines for degree n, ascending in energy."""
    if prob.n < 1:
        raise ContractViolation("spectrum needs n >= 1")
    digits = resolve_digits(digits)
    tol = Fraction(1, 10**digits) if tol is None else as_fraction(tol)
    red = reduced_critical_polynomial(prob)
    brackets = isolate_real_roots(red, tol)
    positive = [b for b in brackets if b.lo >= 0 and b.approx > 0]
    if len(positive) != red.degree or any(b.multiplicity != 1 for b in positive):
        raise SolvabilityError(
            f"expected {red.degree} simple positive roots, found {len(positive)}"
        )
    k, n = prob.k, prob.n
    lines = []
    with workdps(digits):
        for i, b in enumerate(positive, start=1):
            en = b.exact if b.exact is not None else to_mpf(b.approx)
            cs = tuple(line_coefficients(prob, en))
            lines.append(
                SpectralLine(
                    index=i,
                    bracket=b,
                    energy=en,
                    coupling=(2 * n + k - 1) * en,
                    eigenvalue=-en * en,
                    coefficients=cs,
                    node_count=_node_count(prob, b),
                    digits=digits,
                )
            )
    return lines


def wavefunction(line: SpectralLine, prob: CoulombProblem, r) -> object:
    """psi(r) = r^{(k-1)/2} e^{-energy r} f_n(r); psi(0) = 0 by continuity."""
    if r < 0:
        raise ContractViolation("r must be nonnegative")
    with workdps(line.digits):
        r = to_mpf(r)
        if r == 0:
            return mpmath.mpf(0)
        en = to_mpf(line.energy)
        f = mpmath.mpf(0)
        for c in reversed(line.coefficients):
            f = f * r + to_mpf(c)
        return r ** (mpmath.mpf(prob.k - 1) / 2) * mpmath.exp(-en * r) * f


def schrodinger_residual(line: SpectralLine, prob: CoulombProblem, r) -> object:
    """Relative residual of the radial equation at r > 0.

    The numerator is |-psi'' + V psi + energy^2 psi| with the derivatives
    taken analytically; the denominator is the largest of the three terms.
    """
    if r <= 0:
        raise ContractViolation("r must be positive")
    k = prob.k
    with workdps(line.digits):
        r = to_mpf(r)
        en = to_mpf(line.energy)
        v = to_mpf(line.coupling)
        cs = [to_mpf(c) for c in line.coefficients]
        f = df = d2f = mpmath.mpf(0)
        for c in reversed(cs):
            d2f = d2f * r + 2 * df
            df = df * r + f
            f = f * r + c
        a = mpmath.mpf(k - 1) / 2
        g = r**a * mpmath.exp(-en * r)
        g1 = g * (a / r - en)
        g2 = g * ((a / r - en) ** 2 - a / r**2)
        psi = g * f
        psi2 = g2 * f + 2 * g1 * df + g * d2f
        pot = mpmath.mpf((k - 1) * (k - 3)) / (4 * r * r) - v / (r + 1)
        terms = (-psi2, pot * psi, en * en * psi)
        scale = max(abs(t) for t in terms)
        if scale == 0:
            return mpmath.mpf(0)
        return abs(sum(terms)) / scale


def coulomb_quotients(prob: CoulombProblem, m: int) -> list:
    """Quotients Q_0..Q_m with P_{j+n+1} = Q_j P_{n+1}, by their own recurrence.

    Each quotient is verified by exact division of the energy polynomials.
    """
    if m < 0:
        raise ContractViolation("m must be nonnegative")
    k, n = prob.k, prob.n
    x = RationalPoly.x(E)
    qs = [RationalPoly.zero(E), RationalPoly.constant(1, E)]
    for j in range(m):
        a = n + j + 1
        diag = x * (2 * a + k - 1) - a * (n + k + j - 1)
        qs.append(diag * qs[-1] + x * (2 * j * a * (n + k + j - 1)) * qs[-2])
    qs = qs[1:]
    ps = energy_polynomials(prob, n + 1 + m)
    crit = ps[n + 1]
    for j in range(m + 1):
        quot, rem = divmod(ps[j + n + 1], crit)
        if not rem.is_zero or quot != qs[j]:
            raise FactorizationError(f"quotient {j} fails exact division for n={n}, k={k}")
    return qs


def determinant_polynomial(prob: CoulombProblem) -> RationalPoly:
    """Determinant of the (n+1)x(n+1) tridiagonal matrix written directly in energy.

    Diagonal j(k+j-2) - energy(k+2j-1), super j(j+k-2), sub 2(n-j+1) energy.
    """
    k, n = prob.k, prob.n
    x = RationalPoly.x(E)
    zero = RationalPoly.zero(E)
    size = n + 1
    rows = [[zero] * size for _ in range(size)]
    for j in range(size):
        rows[j][j] = RationalPoly.constant(j * (k + j - 2), E) - x * (k + 2 * j - 1)
        if j + 1 < size:
            t = j + 1
            rows[j][j + 1] = RationalPoly.constant(t * (t + k - 2), E)
        if j >= 1:
            rows[j][j - 1] = x * (2 * (n - j + 1))
    return tridiagonal_determinant(rows)


def heun_root_agreement(prob: CoulombProblem, digits=None):
    """Largest |D_{n+1}((k-1) energy)| of the generic Heun machinery at each line.

    The Heun coefficients depend on the energy, so for each closed-form root
    the mapped parameters are rebuilt at a rational stand-in for the root and
    the generic characteristic polynomial is evaluated at e0 = (k-1) energy.
    The value is scaled by the sum of absolute coefficients.
    """
    worst = Fraction(0)
    for line in spectrum(prob, digits=digits):
        en = line.bracket.approx
        mp = to_gche(prob, en)
        char = delta_sequence(mp.params, prob.n)[-1]
        val = abs(char(mp.epsilon0))
        scale = sum((abs(c) * abs(mp.epsilon0) ** i for i, c in enumerate(char.coeffs)), Fraction(0))
        worst = max(worst, val / scale)
    return worst


# -- three-dimensional Laguerre reduction ---------------------------------------


@dataclass(frozen=True)
class LaguerreReduction:
    """Outcome of reducing the k=3 critical polynomials to Laguerre form.

    ``v_polys[i]`` is V_{i+1}, ``laguerre_polys[i]`` is
    (-1)^{i+1} (i+1)! L_{i+1}^{(1)}(2 energy), and ``ratios[i]`` is the
    constant V/L-form ratio (None when the two are not proportional).
    """

    n: int
    p_polys: tuple
    v_polys: tuple
    laguerre_polys: tuple
    ratios: tuple
    matches_critical: bool
    identity_exact: bool
    v_roots: tuple
    laguerre_roots: tuple
    max_gap: float


def _ratio(a: RationalPoly, b: RationalPoly):
    if a.degree != b.degree or b.is_zero:
        return None
    c = a.leading / b.leading
    return c if a == b * c else None


def laguerre_reduction(n: int, tol=Fraction(1, 10**30)) -> LaguerreReduction:
    """k = 3 case: critical polynomials against generalized Laguerre polynomials.

    Builds P_1..P_n from the degree-indexed three-term recurrence with
    P_1 = 8E(E-1), P_2 = 24E(2E^2-6E+3), sets Q_m = P_m/(m+1)! and
    V_m = Q_m/(4E), then compares V_m with (-1)^m m! L_m^{(1)}(2E) computed by
    the independent Laguerre recurrence, both as polynomials and via roots.
    """
    if n < 1:
        raise ContractViolation("n must be at least 1")
    x = RationalPoly.x(E)
    ps = [x * 8 * (x - 1), x * 24 * (x * x * 2 - x * 6 + 3)]
    for m in range(3, n + 1):
        ps.append(ps[-1] * (x - m) * (2 * (m + 1)) - ps[-2] * (m * m * (m * m - 1)))
    ps = ps[:n]
    vs = []
    for m, p in enumerate(ps, start=1):
        q = p / math.factorial(m + 1)
        vs.append((q / 4).shift_down(1))
    lags = [laguerre(m, 1, x * 2) * ((-1) ** m * math.factorial(m)) for m in range(1, n + 1)]
    ratios = tuple(_ratio(v, lg) for v, lg in zip(vs, lags))
    matches = all(
        ps[m - 1] == energy_polynomials(CoulombProblem.from_k(3, m), m + 1)[m + 1]
        for m in range(1, n + 1)
    )
    v_roots = tuple(float(b.approx) for b in isolate_real_roots(vs[-1], tol))
    l_roots = tuple(r / 2 for r in laguerre_roots(n, 1.0))
    gap = (
        max(abs(a - b) for a, b in zip(v_roots, l_roots))
        if len(v_roots) == len(l_roots)
        else math.inf
    )
    return LaguerreReduction(
        n=n,
        p_polys=tuple(ps),
        v_polys=tuple(vs),
        laguerre_polys=tuple(lags),
        ratios=ratios,
        matches_critical=matches,
        identity_exact=all(r == 1 for r in ratios),
        v_roots=v_roots,
        laguerre_roots=l_roots,
        max_gap=gap,
    )
