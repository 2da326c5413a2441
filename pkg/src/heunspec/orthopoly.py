"""Finite orthogonal polynomial sequences attached to polynomial Heun solutions.

The monic sequence P_j(z) obeys

    P_{j+1} = (z - b_j) P_j - lam_j P_{j-1},
    b_j   = j(j-1) a2 + j b1,
    lam_j = j(j-n-1) b2 ((j-1) a1 + b0),

so lam_{n+1} = 0 and P_{n+1} (the critical polynomial) divides every later
member.  The spectral weight is only known through its moments; here it is
a moment functional fixed by a triangular solve.  All checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BridgeUndefinedError,
    ContractViolation,
    FactorizationError,
    IdentityError,
    UnderdeterminedMoments,
)
from .heun import GcheParams, coefficients, epsilon0_roots
from .numeric import resolve_digits, to_mpf, workdps
from .polycore import RationalPoly, Var, as_fraction

__all__ = [
    "OrthoSequence",
    "QuotientSequence",
    "NormTable",
    "MomentTable",
    "pochhammer",
    "recurrence_b",
    "recurrence_lambda",
    "generate_P",
    "generate_Q",
    "coefficient_bridge",
    "validate_bridge",
    "p_norm",
    "q_norm",
    "christoffel_darboux_gap",
    "christoffel_darboux_confluent",
    "norms",
    "moments",
    "functional",
    "weighted_identities",
    "regenerate_from_moments",
    "factorize",
    "q_norms_and_cd",
]


def pochhammer(x, k: int):
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def recurrence_b(params: GcheParams, j: int) -> Fraction:
    return j * (j - 1) * params.alpha2 + j * params.beta1


def recurrence_lambda(params: GcheParams, n: int, j: int) -> Fraction:
    return j * (j - n - 1) * params.beta2 * ((j - 1) * params.alpha1 + params.beta0)


@dataclass(frozen=True)
class OrthoSequence:
    """P_{-1}..P_m stored in ``polys`` with an index offset of one."""

    params: GcheParams
    degree_n: int
    polys: tuple

    @property
    def m(self) -> int:
        return len(self.polys) - 2

    def __getitem__(self, j: int) -> RationalPoly:
        if j < -1 or j > self.m:
            raise IndexError(j)
        return self.polys[j + 1]


QuotientSequence = OrthoSequence


def generate_P(params: GcheParams, n: int, m: int) -> OrthoSequence:
    if n < 0 or m < 0:
        raise ContractViolation("n and m must be nonnegative")
    z = RationalPoly.x(Var.ZETA)
    polys = [RationalPoly.zero(Var.ZETA), RationalPoly.constant(1, Var.ZETA)]
    for j in range(m):
        nxt = (z - recurrence_b(params, j)) * polys[-1] - recurrence_lambda(params, n, j) * polys[-2]
        polys.append(nxt)
    return OrthoSequence(params, n, tuple(polys))


def generate_Q(params: GcheParams, n: int, m: int) -> QuotientSequence:
    """Quotients of the members past the critical polynomial, by their own recurrence."""
    if n < 0 or m < 0:
        raise ContractViolation("n and m must be nonnegative")
    z = RationalPoly.x(Var.ZETA)
    a2, a1, b2, b1, b0 = params.as_tuple()
    polys = [RationalPoly.zero(Var.ZETA), RationalPoly.constant(1, Var.ZETA)]
    for k in range(1, m + 1):
        shift = (k + n) * ((k + n - 1) * a2 + b1)
        lam = (k - 1) * (k + n) * b2 * ((k + n - 1) * a1 + b0)
        polys.append((z - shift) * polys[-1] - lam * polys[-2])
    return OrthoSequence(params, n, tuple(polys))


# -- bridge to the Heun coefficients ------------------------------------------


def _pivot_product(params: GcheParams, j: int) -> Fraction:
    # prod_{i<j} (i+1)(i a1 + b0) = j! a1^j (b0/a1)_j when a1 != 0
    out = Fraction(1)
    for i in range(j):
        out *= (i + 1) * (i * params.alpha1 + params.beta0)
    return out


def coefficient_bridge(seq: OrthoSequence) -> list:
    """Scale factors s_j with C_j = s_j P_j(e0), j = 0..min(n, m).

    Written as a product of recurrence pivots so that a1 = 0 is allowed;
    the bridge is undefined only when some pivot vanishes.
    """
    out = []
    for j in range(min(seq.degree_n, seq.m) + 1):
        prod = _pivot_product(seq.params, j)
        if prod == 0:
            raise BridgeUndefinedError(f"pivot product vanishes at j={j}")
        out.append(1 / prod)
    return out


def validate_bridge(params: GcheParams, n: int, digits=None):
    """Largest |C_j - s_j P_j(e0)| over every real root e0 and every j."""
    digits = resolve_digits(digits)
    seq = generate_P(params, n, n)
    scales = coefficient_bridge(seq)
    cond = epsilon0_roots(params, n, digits=digits)
    worst = 0
    with workdps(digits):
        for i, root in enumerate(cond.epsilon0_roots, start=1):
            sol = coefficients(params, n, root, root_index=i, digits=digits, sample_points=[])
            e0 = sol.epsilon0
            for j, c in enumerate(sol.coefficients):
                if sol.exact:
                    gap = abs(c - scales[j] * seq[j](e0))
                else:
                    gap = abs(c - to_mpf(scales[j]) * seq[j](e0))
                worst = max(worst, gap)
    return worst


# -- norms ------------------------------------------------------------------


def p_norm(params: GcheParams, n: int, k: int) -> Fraction:
    """Product form prod_{j<=k} lam_j of the k-th squared norm."""
    out = Fraction(1)
    for j in range(1, k + 1):
        out *= recurrence_lambda(params, n, j)
    return out


def _p_norm_closed(params: GcheParams, n: int, k: int) -> Fraction:
    a1, b2, b0 = params.alpha1, params.beta2, params.beta0
    fact = pochhammer(1, k)
    if a1 == 0:
        # (b2 a1)^k (b0/a1)_k degenerates to (b2 b0)^k
        return fact * (b2 * b0) ** k * pochhammer(-n, k)
    return fact * (b2 * a1) ** k * pochhammer(-n, k) * pochhammer(b0 / a1, k)


def q_norm(params: GcheParams, n: int, k: int) -> Fraction:
    a1, b2, b0 = params.alpha1, params.beta2, params.beta0
    if a1 == 0:
        return pochhammer(1, k) * pochhammer(n + 2, k) * (b2 * b0) ** k
    return pochhammer(1, k) * pochhammer(n + 2, k) * (b2 * a1) ** k * pochhammer(n + 1 + b0 / a1, k)


@dataclass(frozen=True)
class NormTable:
    values: tuple
    recursion: tuple

    @property
    def agree(self) -> bool:
        return self.values == self.recursion


def norms(params: GcheParams, n: int, m: int) -> NormTable:
    if m < 0:
        raise ContractViolation("m must be nonnegative")
    closed = tuple(_p_norm_closed(params, n, k) for k in range(m + 1))
    rec = [Fraction(1)]
    for k in range(1, m + 1):
        rec.append(k * (k - 1 - n) * params.beta2 * ((k - 1) * params.alpha1 + params.beta0) * rec[-1])
    table = NormTable(closed, tuple(rec))
    if not table.agree:
        raise IdentityError("closed-form norms disagree with their recursion")
    return table


# -- Christoffel-Darboux ----------------------------------------------------


def _ensure(seq: OrthoSequence, m: int) -> OrthoSequence:
    if seq.m >= m:
        return seq
    return generate_P(seq.params, seq.degree_n, m)


def _cd_norms(params, n, m):
    hs = [p_norm(params, n, j) for j in range(m + 1)]
    if any(h == 0 for h in hs):
        raise ContractViolation(f"a norm up to index {m} vanishes; need m <= n and nonzero pivots")
    return hs


def christoffel_darboux_gap(seq: OrthoSequence, z1, z2, m: int):
    """Both sides of the Christoffel-Darboux sum at distinct points."""
    z1, z2 = as_fraction(z1), as_fraction(z2)
    if z1 == z2:
        raise ContractViolation("z1 == z2; use christoffel_darboux_confluent")
    if m < 0:
        raise ContractViolation("m must be nonnegative")
    seq = _ensure(seq, m + 1)
    hs = _cd_norms(seq.params, seq.degree_n, m)
    lhs = sum((seq[j](z1) * seq[j](z2) / hs[j] for j in range(m + 1)), Fraction(0))
    rhs = (seq[m + 1](z1) * seq[m](z2) - seq[m](z1) * seq[m + 1](z2)) / (hs[m] * (z1 - z2))
    return lhs, rhs


def christoffel_darboux_confluent(seq: OrthoSequence, z, m: int):
    z = as_fraction(z)
    if m < 0:
        raise ContractViolation("m must be nonnegative")
    seq = _ensure(seq, m + 1)
    hs = _cd_norms(seq.params, seq.degree_n, m)
    lhs = sum((seq[j](z) ** 2 / hs[j] for j in range(m + 1)), Fraction(0))
    hi, lo = seq[m + 1], seq[m]
    rhs = (hi.derivative()(z) * lo(z) - lo.derivative()(z) * hi(z)) / hs[m]
    return lhs, rhs


# -- moments ----------------------------------------------------------------


@dataclass(frozen=True)
class MomentTable:
    values: tuple

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)


def moments(params: GcheParams, n: int, order: int) -> MomentTable:
    """Moments mu_0..mu_order of the functional that makes P_j orthogonal.

    mu_d comes from the condition on z^i P_j with j = min(d, n+1) and
    i = d - j <= j; the condition is G_j when i == j and zero otherwise.
    Up to order 2n+2 every condition is one the finite sequence actually
    imposes (P_{n+1} is orthogonal to everything of degree <= n+1 because
    its norm vanishes); beyond that the moments are free.
    """
    if n < 0 or order < 0:
        raise ContractViolation("n and order must be nonnegative")
    if order > 2 * n + 2:
        raise UnderdeterminedMoments(f"moments past order {2 * n + 2} are not fixed for n={n}")
    seq = generate_P(params, n, min(order, n + 1))
    mu = []
    for d in range(order + 1):
        j = min(d, n + 1)
        i = d - j
        poly = seq[j] * RationalPoly((0,) * i + (1,), Var.ZETA)
        target = p_norm(params, n, j) if i == j else Fraction(0)
        acc = sum((poly.coeff(t) * mu[t] for t in range(d)), Fraction(0))
        mu.append((target - acc) / poly.coeff(d))
    return MomentTable(tuple(mu))


def functional(poly: RationalPoly, mu: MomentTable) -> Fraction:
    """Apply the moment functional to a polynomial."""
    if poly.degree >= len(mu):
        raise UnderdeterminedMoments(f"degree {poly.degree} needs more moments than {len(mu) - 1}")
    return sum((c * mu[t] for t, c in enumerate(poly.coeffs)), Fraction(0))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    value: Fraction
    expected: Fraction

    @property
    def ok(self) -> bool:
        return self.value == self.expected


def weighted_identities(params: GcheParams, n: int, k: int) -> list:
    """Evaluate the weighted integral identities for index k by moments.

    Covers the mean of P_k, orthogonality against lower P_j, the squared
    norm, the first and second z-weighted squared norms, the mixed
    z P_k P_{k-1} term and the vanishing of the first moment of P_k.
    """
    if not 0 <= k <= n:
        raise ContractViolation("need 0 <= k <= n")
    mu = moments(params, n, 2 * n + 2)
    seq = generate_P(params, n, n + 1)
    z = RationalPoly.x(Var.ZETA)
    g = p_norm(params, n, k)
    bk = recurrence_b(params, k)
    checks = [
        IdentityCheck("mean", functional(seq[k], mu), Fraction(1 if k == 0 else 0)),
        IdentityCheck("square", functional(seq[k] * seq[k], mu), g),
        IdentityCheck("z_square", functional(z * seq[k] * seq[k], mu), bk * g),
        IdentityCheck(
            "z2_square",
            functional(z * z * seq[k] * seq[k], mu),
            (recurrence_lambda(params, n, k + 1) + recurrence_lambda(params, n, k) + bk * bk) * g,
        ),
    ]
    for j in range(k):
        checks.append(IdentityCheck(f"orth_{j}", functional(seq[j] * seq[k], mu), Fraction(0)))
    if k >= 1:
        checks.append(IdentityCheck("z_mixed", functional(z * seq[k] * seq[k - 1], mu), g))
    if k >= 2:
        checks.append(IdentityCheck("z_first", functional(z * seq[k], mu), Fraction(0)))
    return checks


def regenerate_from_moments(params: GcheParams, n: int, upto: int | None = None) -> OrthoSequence:
    """Rebuild P_0..P_{upto+1} from moment ratios alone (Stieltjes form).

    The shift is <z P_k^2>/<P_k^2> and the coupling <P_k^2>/<P_{k-1}^2>,
    both evaluated with the moment functional.
    """
    upto = n - 1 if upto is None else upto
    if upto > n:
        raise ContractViolation("regeneration needs nonzero norms, so upto <= n")
    mu = moments(params, n, 2 * n + 2)
    z = RationalPoly.x(Var.ZETA)
    polys = [RationalPoly.zero(Var.ZETA), RationalPoly.constant(1, Var.ZETA), z]
    prev_sq = functional(RationalPoly.constant(1, Var.ZETA), mu)
    for k in range(1, upto + 1):
        pk, pkm = polys[-1], polys[-2]
        sq = functional(pk * pk, mu)
        if sq == 0 or prev_sq == 0:
            raise IdentityError(f"vanishing norm at k={k}")
        shift = functional(z * pk * pk, mu) / sq
        polys.append((z - shift) * pk - (sq / prev_sq) * pkm)
        prev_sq = sq
    return OrthoSequence(params, n, tuple(polys))


# -- factorization ----------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    critical: RationalPoly
    quotients: QuotientSequence
    ok: bool


def factorize(params: GcheParams, n: int, m: int) -> Factorization:
    """Divide P_{k+n+1} by the critical polynomial for k = 0..m-n-1."""
    if m < n + 1:
        raise ContractViolation("need m >= n + 1")
    seq = generate_P(params, n, m)
    critical = seq[n + 1]
    qs = generate_Q(params, n, m - n - 1)
    for k in range(m - n):
        quot, rem = divmod(seq[k + n + 1], critical)
        if not rem.is_zero:
            raise FactorizationError(f"P_{k + n + 1} leaves remainder {rem} on division")
        if quot != qs[k]:
            raise FactorizationError(f"quotient {k} differs from its recurrence: {quot} vs {qs[k]}")
    return Factorization(critical, qs, True)


@dataclass(frozen=True)
class QReport:
    norms: tuple
    recursion: tuple
    cd_gaps: tuple

    @property
    def ok(self) -> bool:
        return self.norms == self.recursion and all(a == b for a, b in self.cd_gaps)


def q_norms_and_cd(params: GcheParams, n: int, m: int, points=None) -> QReport:
    """Quotient-sequence norms against their recursion, plus both CD forms.

    ``points`` is a list of (z1, z2) pairs; equal entries select the
    confluent form.  Each CD entry in the report is a (lhs, rhs) pair for
    index k = 0..m-1 at each point pair.
    """
    if m < 1:
        raise ContractViolation("m must be at least 1")
    a1, b2, b0 = params.alpha1, params.beta2, params.beta0
    closed = tuple(q_norm(params, n, k) for k in range(m + 1))
    rec = [Fraction(1)]
    for k in range(1, m + 1):
        rec.append(k * (k + n + 1) * b2 * ((k + n) * a1 + b0) * rec[-1])
    rec = tuple(rec)
    points = [(Fraction(0), Fraction(1))] if points is None else points
    qs = generate_Q(params, n, m)
    gaps = []
    for z1, z2 in points:
        z1, z2 = as_fraction(z1), as_fraction(z2)
        for k in range(m):
            hs = closed[: k + 1]
            if any(h == 0 for h in hs):
                raise ContractViolation(f"quotient norm vanishes below index {k}")
            if z1 != z2:
                lhs = sum((qs[j](z1) * qs[j](z2) / hs[j] for j in range(k + 1)), Fraction(0))
                rhs = (qs[k + 1](z1) * qs[k](z2) - qs[k](z1) * qs[k + 1](z2)) / (hs[k] * (z1 - z2))
            else:
                lhs = sum((qs[j](z1) ** 2 / hs[j] for j in range(k + 1)), Fraction(0))
                rhs = (
                    qs[k + 1].derivative()(z1) * qs[k](z1) - qs[k].derivative()(z1) * qs[k + 1](z1)
                ) / hs[k]
            gaps.append((lhs, rhs))
    return QReport(closed, rec, tuple(gaps))
