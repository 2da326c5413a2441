import math
from fractions import Fraction as F

import mpmath
import pytest

from heunspec.coulomb import (
    CoulombProblem,
    coulomb_quotients,
    coupling_condition,
    determinant_polynomial,
    energy_polynomials,
    heun_root_agreement,
    laguerre_reduction,
    line_coefficients,
    reduced_critical_polynomial,
    schrodinger_residual,
    spectrum,
    to_gche,
    wavefunction,
)
from heunspec.errors import ContractViolation
from heunspec.heun import GcheParams, epsilon0_roots
from heunspec.polycore import RationalPoly, Var, isolate_real_roots

from reference_table import K_VALUES, TABLE

E = Var.ENERGY
x = RationalPoly.x(E)


def ep(*cs):
    return RationalPoly(cs, E)


def test_problem_contract():
    assert CoulombProblem(3, 1, 2).k == 5
    with pytest.raises(ContractViolation):
        CoulombProblem(1, 0, 1)


def test_mapping():
    m = to_gche(CoulombProblem.from_k(3, 1), 1)
    assert m.params == GcheParams(1, 1, -2, 0, 2)
    assert m.epsilon0 == 2 and m.coupling == 4
    free = to_gche(CoulombProblem.from_k(7, 1), 0, v=F(3))
    assert free.epsilon1 == -3


def test_coupling_condition():
    for k in range(2, 8):
        for n in range(1, 4):
            assert coupling_condition(CoulombProblem.from_k(k, n)) == x * (2 * n + k - 1)


def test_low_energy_polynomials():
    for k in range(2, 9):
        ps = energy_polynomials(CoulombProblem.from_k(k, 1))
        assert ps[0] == ep(1)
        assert ps[1] == x * (k - 1)
        assert ps[2] == x * (k * k - 1) * (x - 1)


def test_table_entries_up_to_sign():
    # the recurrence reproduces every tabulated entry, some with flipped sign
    for (n, j), f in TABLE.items():
        for k in K_VALUES:
            p = energy_polynomials(CoulombProblem.from_k(k, n))[j]
            t = f(x, k)
            assert p == t or p == -t, (n, j, k)


def test_spectrum_low_degrees():
    for k in range(2, 13):
        (line,) = spectrum(CoulombProblem.from_k(k, 1))
        assert line.energy == 1 and line.eigenvalue == -1 and line.coupling == k + 1
        assert reduced_critical_polynomial(CoulombProblem.from_k(k, 2)) == ep(2 * k, -3 * (k + 1), k + 1)


def test_cubic_reduced_polynomial():
    for k in range(2, 10):
        red = reduced_critical_polynomial(CoulombProblem.from_k(k, 3))
        c = (1 + k) * (3 + k)
        cubic = ep(-6 * k * (1 + k), 15 + 34 * k + 11 * k * k, -6 * c, c)
        assert red * c == cubic * red.leading


# frozen with mpmath.polyroots at 30 digits
K3_N3 = ["0.4679111137620439296", "1.6527036446661393023", "3.8793852415718167681"]
K5_N2 = ["0.73623738417402666557", "2.2637626158259733344"]


@pytest.mark.parametrize("k,n,ref", [(3, 3, K3_N3), (5, 2, K5_N2)])
def test_spectrum_against_frozen_roots(k, n, ref):
    lines = spectrum(CoulombProblem.from_k(k, n), digits=40)
    with mpmath.workdps(30):
        for line, r in zip(lines, ref):
            assert abs(line.energy - mpmath.mpf(r)) < mpmath.mpf(10) ** -18
            assert abs(line.eigenvalue + line.energy**2) < mpmath.mpf(10) ** -28


def test_spectrum_matches_generic_heun_roots():
    for k in (2, 4, 7):
        for n in range(1, 5):
            assert heun_root_agreement(CoulombProblem.from_k(k, n), digits=40) < F(1, 10**25)


@pytest.mark.parametrize("n", range(1, 7))
def test_determinant_is_signed_critical_polynomial(n):
    for k in (2, 3, 6, 10):
        prob = CoulombProblem.from_k(k, n)
        assert determinant_polynomial(prob) == energy_polynomials(prob)[n + 1] * (-1) ** (n + 1)


def test_positive_simple_roots_and_interlacing_across_degree():
    tol = F(1, 10**25)
    for k in range(2, 13):
        prev = None
        for n in range(1, 9):
            roots = isolate_real_roots(reduced_critical_polynomial(CoulombProblem.from_k(k, n)), tol)
            assert all(b.multiplicity == 1 for b in roots)
            assert len(roots) == n and all(b.lo > 0 for b in roots)
            if prev is not None:
                for i, r in enumerate(prev):
                    assert roots[i].hi < r.lo and r.hi < roots[i + 1].lo
            prev = roots


def test_wavefunction_ground_line():
    prob = CoulombProblem.from_k(3, 1)
    (line,) = spectrum(prob)
    assert wavefunction(line, prob, 0) == 0
    with mpmath.workdps(50):
        assert abs(wavefunction(line, prob, 1) - 2 / mpmath.e) < mpmath.mpf(10) ** -40
        for k in (2, 5, 9):
            p = CoulombProblem.from_k(k, 1)
            (ln,) = spectrum(p)
            r = mpmath.mpf("2.5")
            ref = r ** (mpmath.mpf(k - 1) / 2) * mpmath.exp(-r) * (1 + r)
            assert abs(wavefunction(ln, p, r) - ref) < mpmath.mpf(10) ** -40
    with pytest.raises(ContractViolation):
        wavefunction(line, prob, -1)


def test_second_coefficient_closed_form():
    k = 5
    prob = CoulombProblem.from_k(k, 2)
    for line in spectrum(prob):
        e = line.energy
        with mpmath.workdps(50):
            assert abs(line.coefficients[2] - e * (e * (k + 1) - k - 3) / (2 * k)) < mpmath.mpf(10) ** -40


def test_line_coefficients_exact_at_rational_energy():
    cs = line_coefficients(CoulombProblem.from_k(4, 1), F(1))
    assert cs == [1, 1]


@pytest.mark.parametrize("n,k", [(1, 3), (2, 5), (3, 3), (4, 7), (6, 2)])
def test_schrodinger_residual(n, k):
    prob = CoulombProblem.from_k(k, n)
    for line in spectrum(prob):
        for r in (0.1, 0.7, 2, 5, 11, 20):
            assert schrodinger_residual(line, prob, r) <= 1e-10


def test_quotients_examples():
    for k in range(2, 9):
        q1 = coulomb_quotients(CoulombProblem.from_k(k, 1), 2)
        assert q1[1] == x * (k + 3) - 2 * k
        q2 = coulomb_quotients(CoulombProblem.from_k(k, 2), 3)
        assert q2[1] == x * (k + 5) - 3 * (k + 1)
        assert q2[2] == x * x * (k + 5) * (k + 7) - x * (k + 5) * (7 * k + 9) + 12 * (k + 1) * (k + 2)


def test_node_counts_follow_line_index():
    # the largest root is the deepest level, E = -root^2, and has no zeros
    for k in (3, 5, 8):
        for n in range(1, 5):
            lines = spectrum(CoulombProblem.from_k(k, n))
            assert [ln.node_count for ln in lines] == list(range(n))[::-1]


def test_laguerre_reduction_roots_and_ratio():
    red = laguerre_reduction(8)
    assert red.matches_critical
    assert red.max_gap < 1e-10
    # the transformed polynomials are proportional to the Laguerre form, constant 1/2
    assert set(red.ratios) == {F(1, 2)}
    assert not red.identity_exact


def test_laguerre_low_orders():
    red = laguerre_reduction(4)
    assert red.v_polys[0].monic() == x - 1
    assert red.v_polys[1].monic() == (x * x * 2 - x * 6 + 3).monic()
    assert red.v_polys[3].monic() == ep(15, -60, 60, -20, 2).monic()
    (r1, r2) = isolate_real_roots(red.v_polys[1], F(1, 10**20))
    assert abs(float(r1) - (3 - math.sqrt(3)) / 2) < 1e-14
    assert abs(float(r2) - (3 + math.sqrt(3)) / 2) < 1e-14


def test_mapped_params_are_in_real_simple_regime():
    cond = epsilon0_roots(to_gche(CoulombProblem.from_k(5, 3), F(3, 2)).params, 3)
    assert cond.real_simple_guaranteed and cond.root_count == 4
