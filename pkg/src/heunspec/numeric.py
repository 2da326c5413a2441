"""Working-precision defaults shared by the numeric layers."""

import os

import mpmath

from .errors import ContractViolation

DEFAULT_DIGITS = 50
_ENV = "HEUNSPEC_DIGITS"


def default_digits() -> int:
    raw = os.environ.get(_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_DIGITS
    try:
        d = int(raw)
    except ValueError as exc:
        raise ContractViolation(f"{_ENV} must be an integer, got {raw!r}") from exc
    if d < 16:
        raise ContractViolation(f"{_ENV} must be at least 16, got {d}")
    return d


def resolve_digits(digits) -> int:
    return default_digits() if digits is None else int(digits)


def workdps(digits):
    """mpmath context with a few guard digits above ``digits``."""
    return mpmath.workdps(resolve_digits(digits) + 10)


def to_mpf(x):
    """Convert Fractions, ints, strings or mpf values to mpf at current precision."""
    from fractions import Fraction

    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if hasattr(x, "to_mpf"):
        return x.to_mpf()
    return mpmath.mpf(x)
