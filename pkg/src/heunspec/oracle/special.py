"""Generalized Laguerre polynomials and Kummer confluent hypergeometric functions.

These are reference implementations for cross-checks, written separately
from the recurrences and closed forms they are used to verify.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np

from ..errors import ContractViolation, PoleError
from .quadrature import quadrature

__all__ = ["laguerre", "laguerre_roots", "kummer", "kummer_m", "kummer_u"]


def laguerre(n: int, alpha, x):
    """L_n^{(alpha)}(x) by the three-term recurrence.

    ``x`` may be a float, an exact Fraction/int (the result is then exact)
    or a polynomial object supporting +, - and scalar * and /, in which
    case the result is the polynomial L_n^{(alpha)} composed with ``x``.
    """
    if n < 0:
        raise ContractViolation("n must be nonnegative")
    exact = isinstance(x, (int, Fraction)) and isinstance(alpha, (int, Fraction))
    one = Fraction(1) if exact else 1.0
    if not exact and not isinstance(x, (float, int)):
        one = x * 0 + 1
    prev = one * 0
    cur = one
    for k in range(n):
        nxt = ((2 * k + 1 + alpha) * cur - x * cur - (k + alpha) * prev) / (k + 1)
        prev, cur = cur, nxt
    return cur


def laguerre_roots(n: int, alpha: float = 1.0) -> list:
    """Roots of L_n^{(alpha)} from the eigenvalues of its Jacobi matrix."""
    if n < 1:
        return []
    k = np.arange(n, dtype=float)
    diag = 2 * k + 1 + alpha
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    jac = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    return sorted(float(v) for v in np.linalg.eigvalsh(jac))


def _is_nonpos_int(x) -> bool:
    return x <= 0 and float(x).is_integer()


def _kummer_m_mp(a, b, z, rel_tol):
    # series at the ambient mpmath precision; returns mpf
    a, b, z = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(z)
    pref = mpmath.mpf(1)
    if z < 0 and not _is_nonpos_int(a):
        pref = mpmath.exp(z)
        a, z = b - a, -z
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    k = 0
    while True:
        if a + k == 0:
            break
        term *= (a + k) * z / ((b + k) * (k + 1))
        total += term
        k += 1
        if term == 0 or (k > abs(z) and abs(term) <= rel_tol * abs(total) * 1e-2):
            break
        if k > 100000:
            raise ContractViolation("M series failed to converge")
    return pref * total


def kummer_m(a, b, z, rel_tol: float = 1e-14, digits: int = 30) -> float:
    """1F1(a; b; z) by its Taylor series.

    Negative z goes through Kummer's transformation e^z M(b-a, b, -z) so the
    series has no cancellation.  Summation runs in mpmath at ``digits``.
    """
    if _is_nonpos_int(b):
        raise PoleError(f"M(a, b, z) has a pole at b = {b}")
    with mpmath.workdps(digits):
        return float(_kummer_m_mp(a, b, z, rel_tol))


def kummer_u(a, b, z, method: str = "integral", tol: float = 1e-13) -> float:
    """Tricomi U(a, b, z) for z > 0.

    ``integral`` uses the Laplace-type representation (needs a > 0);
    ``connection`` combines two M values (needs b not an integer).
    """
    if z <= 0:
        raise ContractViolation("U is evaluated only for z > 0")
    if method == "integral":
        if a <= 0:
            raise ContractViolation("integral representation needs a > 0")
        la = math.lgamma(a)

        def f(t):
            if t == 0.0:
                return 0.0 if a > 1 else math.inf
            return math.exp(-z * t + (a - 1) * math.log(t) + (b - a - 1) * math.log1p(t) - la)

        return quadrature(f, 0.0, math.inf, tol=tol, rel_tol=1e-13, scale=max(1.0, 1.0 / z)).value
    if method == "connection":
        if float(b).is_integer():
            raise PoleError("connection formula needs non-integer b")
        # the two terms grow like e^z and cancel; carry enough guard digits
        with mpmath.workdps(30 + int(abs(z) / 2.3)):
            a, b, z = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(z)
            eps = mpmath.eps
            t1 = mpmath.rgamma(a - b + 1) * mpmath.gamma(1 - b) * _kummer_m_mp(a, b, z, eps)
            t2 = (
                mpmath.rgamma(a)
                * mpmath.gamma(b - 1)
                * z ** (1 - b)
                * _kummer_m_mp(a - b + 1, 2 - b, z, eps)
            )
            return float(t1 + t2)
    raise ContractViolation(f"unknown method {method!r}")


def kummer(kind: str, a, b, z, **kw) -> float:
    if kind == "M":
        return kummer_m(a, b, z, **kw)
    if kind == "U":
        return kummer_u(a, b, z, **kw)
    raise ContractViolation(f"kind must be 'M' or 'U', got {kind!r}")
