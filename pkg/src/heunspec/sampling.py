"""Seeded draws of rational Heun parameters for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .heun import GcheParams


def _rat(rng: random.Random, lo: int, hi: int, den: int = 7) -> Fraction:
    d = rng.randint(1, den)
    return Fraction(rng.randint(lo * d, hi * d), d)


def _nonzero(rng, lo, hi, den=7) -> Fraction:
    while True:
        x = _rat(rng, lo, hi, den)
        if x != 0:
            return x


def generic_params(rng: random.Random) -> GcheParams:
    """Nonzero rational coefficients of mixed sign with nonvanishing pivots up to 12."""
    while True:
        p = GcheParams(
            _nonzero(rng, -3, 3),
            _nonzero(rng, -3, 3),
            _nonzero(rng, -3, 3),
            _rat(rng, -3, 3),
            _nonzero(rng, -3, 3),
        )
        pivots = [j * p.alpha1 + p.beta0 for j in range(12)]
        shifted = [(j + 1) * p.alpha1 + p.beta0 for j in range(20)]
        if all(x != 0 for x in pivots + shifted):
            return p


def jacobi_params(rng: random.Random) -> GcheParams:
    """Parameters with every T_j gamma_j > 0 (a1, b0 > 0 and b2 < 0)."""
    return GcheParams(
        _nonzero(rng, -3, 3),
        _nonzero(rng, 0, 3),
        -_nonzero(rng, 0, 3),
        _rat(rng, -3, 3),
        _nonzero(rng, 0, 3),
    )


def _non_integer(rng, lo, hi) -> Fraction:
    while True:
        x = _rat(rng, lo, hi, 9)
        if x.denominator != 1:
            return x


def infinite_weight_params(rng: random.Random) -> GcheParams:
    """a1, a2 > 0, b0 > 0, b2 < 0, with the Kummer b parameter non-integral."""
    a1 = _nonzero(rng, 0, 2)
    a2 = _nonzero(rng, 0, 2)
    b0 = _nonzero(rng, 0, 3)
    b2 = -_nonzero(rng, 0, 2)
    b_target = _non_integer(rng, 1, 5)
    # b = (a2 b1 - a1 b2)/a2^2
    b1 = (b_target * a2 * a2 + a1 * b2) / a2
    return GcheParams(a2, a1, b2, b1, b0)


def finite_weight_params(rng: random.Random) -> GcheParams:
    """a1 > 0 > a2 and b0 > 0, with exponent s drawn in (-1/2, 3)."""
    a1 = _nonzero(rng, 0, 2)
    a2 = -_nonzero(rng, 0, 2)
    b0 = _nonzero(rng, 0, 3)
    b2 = _nonzero(rng, -2, 2)
    s = _rat(rng, 0, 3) - Fraction(1, 2)
    b1 = a2 * (s + 1 + b0 / a1 + a1 * b2 / a2**2)
    return GcheParams(a2, a1, b2, b1, b0)
