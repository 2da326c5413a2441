from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heunspec.errors import ContractViolation, SingularPivotError
from heunspec.heun import (
    GcheParams,
    coefficients,
    delta_sequence,
    epsilon0_roots,
    interlacing_report,
    necessary_condition,
    solution_polynomial,
    tridiagonal_determinant,
    tridiagonal_system,
)
from heunspec.polycore import RationalPoly, Var

Z = Var.ZETA
A2, A1, B2, B1, B0 = F(3, 2), F(1, 3), F(-5, 7), F(2), F(5, 2)
PARAMS = GcheParams(A2, A1, B2, B1, B0)

# eigenvalues of the n=4 tridiagonal matrix for PARAMS, computed with mpmath.eig
EPS0_N4 = [
    "-2.3948260925889785628",
    "2.1331653348504990361",
    "7.6136872982845138539",
    "15.75462209004280206",
    "26.893351369411163613",
]


def test_necessary_condition():
    assert necessary_condition(PARAMS, 0) == 0
    assert necessary_condition(GcheParams(1, 1, -2, 0, 1), 3) == -6
    assert necessary_condition(GcheParams(1, 1, F(5, 7), 0, 1), 2) == F(10, 7)
    with pytest.raises(ContractViolation):
        necessary_condition(PARAMS, -1)


def test_params_reject_degenerate_leading_coefficients():
    with pytest.raises(ContractViolation):
        GcheParams(0, 0, 1, 1, 1)


def test_delta_low_orders():
    seq = delta_sequence(PARAMS, 0)
    assert seq[0].is_zero and seq[1] == RationalPoly.constant(1, Z)
    assert seq[2] == RationalPoly((0, -1), Z)


def test_delta_two_closed_form():
    d2 = delta_sequence(PARAMS, 1)[-1]
    assert d2 == RationalPoly((B0 * B2, -B1, 1), Z)


def test_delta_three_closed_form():
    d3 = delta_sequence(PARAMS, 2)[-1]
    monic = RationalPoly(
        (
            -4 * B0 * B2 * (A2 + B1),
            2 * (B1 * (A2 + B1) + B2 * (A1 + 2 * B0)),
            -(2 * A2 + 3 * B1),
            1,
        ),
        Z,
    )
    # odd-size minors carry the (-1)^{j} of -e0 on the diagonal
    assert d3 == -monic


@pytest.mark.parametrize("n", range(7))
def test_delta_degree_and_determinant(n):
    seq = delta_sequence(PARAMS, n)
    assert all(seq[j + 1].degree == j for j in range(n + 2))
    det = tridiagonal_determinant(tridiagonal_system(PARAMS, n).matrix())
    assert det == seq[-1]


def test_roots_simple_quadratic():
    cond = epsilon0_roots(GcheParams(1, 1, -2, 0, 2), 1)
    assert [b.exact for b in cond.epsilon0_roots] == [-2, 2]
    assert cond.epsilon1 == -2


def test_roots_degree_zero():
    cond = epsilon0_roots(PARAMS, 0)
    assert [b.exact for b in cond.epsilon0_roots] == [0]


def test_roots_match_matrix_eigenvalues():
    cond = epsilon0_roots(PARAMS, 4, tol=F(1, 10**25))
    assert cond.real_simple_guaranteed
    with mpmath.workdps(30):
        for b, ref in zip(cond.epsilon0_roots, EPS0_N4):
            assert abs(b.to_mpf() - mpmath.mpf(ref)) < mpmath.mpf(10) ** -18


def test_roots_tol_positive():
    with pytest.raises(ContractViolation):
        epsilon0_roots(PARAMS, 2, tol=0)


def test_degree_one_solution():
    cond = epsilon0_roots(PARAMS, 1)
    for b in cond.epsilon0_roots:
        sol = coefficients(PARAMS, 1, b)
        with mpmath.workdps(50):
            assert abs(sol.coefficients[1] - b.to_mpf() / mpmath.mpf(5) * 2) < mpmath.mpf(10) ** -40


def test_degree_two_second_coefficient_exact():
    e0 = F(7, 3)  # the closed form holds for any e0 before the overflow test
    sol = coefficients(PARAMS, 2, e0, sample_points=[])
    assert sol.coefficients[0] == 1
    assert sol.coefficients[2] == (2 * B2 * B0 - B1 * e0 + e0 * e0) / (2 * B0 * (B0 + A1))
    assert not sol.consistent


def test_degree_zero_solution_is_constant():
    sol = coefficients(PARAMS, 0, 0)
    assert sol.coefficients == (1,) and sol.consistent and sol.residual_sup == 0


def test_rational_root_solution_is_exact():
    p = GcheParams(1, 1, -2, 0, 2)
    f = solution_polynomial(p, 1, 2)
    assert f == RationalPoly((1, 1), Var.R)
    sol = coefficients(p, 1, F(2))
    assert sol.exact and sol.overflow == 0 and sol.residual_sup == 0


def test_irrational_roots_have_small_overflow_and_residual():
    for b in epsilon0_roots(PARAMS, 4).epsilon0_roots:
        sol = coefficients(PARAMS, 4, b, digits=50)
        assert sol.consistent
        assert sol.residual_sup < mpmath.mpf(10) ** -35


def test_off_root_residual_is_not_small():
    b = epsilon0_roots(PARAMS, 3).epsilon0_roots[1]
    sol = coefficients(PARAMS, 3, b.approx + F(1, 100))
    assert not sol.consistent
    assert sol.residual_sup > F(1, 10**6)


def test_singular_pivot_reports_index():
    p = GcheParams(1, 1, -1, 1, -2)  # (j+1)(j + b0) vanishes at j = 2
    with pytest.raises(SingularPivotError) as exc:
        coefficients(p, 3, 0)
    assert exc.value.j == 2


def test_interlacing_in_positive_regime():
    p = GcheParams(1, 1, -1, 2, 3)
    for n in range(1, 6):
        rep = interlacing_report(p, n)
        assert rep.regime_positive and rep.strictly_interlaced


positive = st.fractions(min_value=F(1, 5), max_value=5, max_denominator=9)
anyval = st.fractions(min_value=-5, max_value=5, max_denominator=9)


@settings(max_examples=25, deadline=None)
@given(anyval, positive, positive, anyval, positive, st.integers(1, 5))
def test_interlacing_property(a2, a1, negb2, b1, b0, n):
    # a1, b0 > 0 and b2 < 0 make every off-diagonal product positive
    p = GcheParams(a2, a1, -negb2, b1, b0)
    rep = interlacing_report(p, n)
    assert rep.regime_positive
    assert len(rep.outer_roots) == n + 1
    assert rep.strictly_interlaced


@settings(max_examples=25, deadline=None)
@given(anyval, anyval, anyval, anyval, anyval, st.integers(0, 5))
def test_continuant_equals_determinant_property(a2, a1, b2, b1, b0, n):
    if a1 == 0 and a2 == 0:
        return
    p = GcheParams(a2, a1, b2, b1, b0)
    assert tridiagonal_determinant(tridiagonal_system(p, n).matrix()) == delta_sequence(p, n)[-1]
