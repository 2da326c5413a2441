from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heunspec.errors import ContractViolation
from heunspec.polycore import (
    RationalPoly,
    Var,
    count_real_roots,
    fraction_to_mpf,
    isolate_real_roots,
    poly_arith,
    poly_divmod,
    poly_gcd,
    simplest_rational_between,
)

Z = Var.ZETA


def P(*cs, var=Z):
    return RationalPoly(cs, var)


def test_difference_of_squares():
    assert poly_arith(P(1, 1), P(1, -1), "mul") == P(1, 0, -1)


def test_additive_identity():
    p = P(F(1, 3), -2, 5)
    assert poly_arith(p, RationalPoly.zero(Z), "add") == p


def test_scalar_scaling():
    assert P(0, F(-3, 2), 1) * 2 == P(0, -3, 2)


def test_normalization_strips_trailing_zeros():
    p = P(1, 2, 0, 0)
    assert p.degree == 1
    assert RationalPoly.zero(Z).degree == -1
    assert P(0, 0).is_zero


def test_variable_mismatch():
    with pytest.raises(ContractViolation):
        poly_arith(P(1), P(1, var=Var.R), "add")
    with pytest.raises(ContractViolation):
        P(1) + P(1, var=Var.ENERGY)


def test_floats_are_refused():
    with pytest.raises(ContractViolation):
        RationalPoly((0.5,), Z)


def test_divmod_exact_factor():
    assert poly_divmod(P(0, -1, 1), P(0, 1)) == (P(-1, 1), RationalPoly.zero(Z))


def test_divmod_with_remainder():
    assert poly_divmod(P(1, 0, 1), P(0, 1)) == (P(0, 1), P(1))


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(P(1, 1), RationalPoly.zero(Z))


def test_evaluation_and_derivative():
    p = P(1, -3, 0, 2)
    assert p(F(1, 2)) == F(1) - F(3, 2) + F(2, 8)
    assert p.derivative() == P(-3, 0, 6)
    assert p(P(1, 1)) == P(0, 3, 6, 2)


def test_gcd_and_monic():
    a = RationalPoly.from_roots([1, 2, F(1, 3)], Z)
    b = RationalPoly.from_roots([2, F(1, 3), 5], Z)
    assert poly_gcd(a, b) == RationalPoly.from_roots([2, F(1, 3)], Z)


def test_roots_symmetric_quadratic():
    roots = isolate_real_roots(P(-1, 0, 1), F(1, 10**12))
    assert [b.exact for b in roots] == [-1, 1]


def test_roots_linear_energy():
    roots = isolate_real_roots(P(-1, 1, var=Var.ENERGY), F(1, 10**12))
    assert len(roots) == 1 and roots[0].exact == 1


def test_roots_irrational_quadratic():
    # (3 -+ sqrt 3)/2 from the quadratic formula
    tol = F(1, 10**30)
    roots = isolate_real_roots(P(3, -6, 2, var=Var.ENERGY), tol)
    assert len(roots) == 2
    import mpmath

    with mpmath.workdps(40):
        s3 = mpmath.sqrt(3)
        for b, ref in zip(roots, [(3 - s3) / 2, (3 + s3) / 2]):
            assert b.exact is None
            assert b.width <= tol
            assert fraction_to_mpf(b.lo) < ref <= fraction_to_mpf(b.hi)
            assert abs(b.to_mpf() - ref) < mpmath.mpf(10) ** -30
    assert abs(float(roots[0]) - 0.63397) < 1e-5
    assert abs(float(roots[1]) - 2.36603) < 1e-5


def test_sign_change_across_brackets():
    p = P(-2, 0, 0, 1)  # cube root of 2
    (b,) = isolate_real_roots(p, F(1, 10**20))
    assert p(b.lo) < 0 < p(b.hi)


def test_repeated_roots_reported_once_with_multiplicity():
    p = RationalPoly.from_roots([1, 1, 1, -2, F(1, 2)], Z)
    roots = isolate_real_roots(p, F(1, 10**10))
    assert [(b.exact, b.multiplicity) for b in roots] == [(-2, 1), (F(1, 2), 1), (1, 3)]


def test_repeated_irrational_root_multiplicity():
    q = P(-2, 0, 1)
    roots = isolate_real_roots(q * q * P(1, 1), F(1, 10**15))
    assert [b.multiplicity for b in roots] == [2, 1, 2]


def test_tol_must_be_positive():
    with pytest.raises(ContractViolation):
        isolate_real_roots(P(-1, 1), 0)


def test_no_real_roots():
    assert isolate_real_roots(P(1, 0, 1), F(1, 100)) == []


def test_simplest_rational():
    assert simplest_rational_between(F(1, 3) - F(1, 10**9), F(1, 3) + F(1, 10**9)) == F(1, 3)
    assert simplest_rational_between(F(-7, 4), F(-5, 4)) == F(-3, 2)


def test_str_round_trip_readable():
    assert str(P(3, -6, 2, var=Var.ENERGY)) == "2*E^2 - 6*E + 3"


# -- properties -----------------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, min_size=1, max_size=9).map(lambda cs: RationalPoly(tuple(cs), Z))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_divmod_of_product_is_exact(a, b):
    if b.is_zero:
        return
    assert poly_divmod(a * b, b) == (a, RationalPoly.zero(Z))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_divmod_reconstructs(a, b):
    if b.is_zero:
        return
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=40, deadline=None)
@given(st.sets(st.fractions(min_value=-10, max_value=10, max_denominator=9), min_size=1, max_size=6))
def test_isolation_recovers_distinct_rational_roots(roots):
    p = RationalPoly.from_roots(roots, Z)
    tol = F(1, 10**12)
    found = isolate_real_roots(p, tol)
    assert len(found) == len(roots)
    for b, r in zip(found, sorted(roots)):
        assert b.lo <= r <= b.hi
        assert abs(b.approx - r) <= tol


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(min_value=-8, max_value=8), min_size=1, max_size=6),
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=9),
)
def test_sturm_count_matches_factored_form(roots, lo, width):
    p = RationalPoly.from_roots(roots, Z)
    a, b = F(lo) + F(1, 2), F(lo + width) + F(1, 2)
    expected = len({r for r in roots if a < r <= b})
    assert count_real_roots(p, a, b) == expected
