import math
import random
from fractions import Fraction as F

import pytest

from heunspec.coulomb import CoulombProblem, to_gche
from heunspec.errors import ContractViolation, WeightDomainError
from heunspec.heun import GcheParams
from heunspec.sampling import finite_weight_params, infinite_weight_params
from heunspec.weights import (
    RadialWeight,
    derive_exponents,
    eigenfunction_orthogonality,
    normalization_closed_form,
    normalization_quadrature,
    overlap_moments,
    self_adjoint_check,
    weight_eval,
)

INFINITE = GcheParams(F(1, 2), F(3, 2), -1, F(7, 3), F(5, 2))
FINITE = GcheParams(F(-1, 2), F(3, 2), -1, F(1, 3), F(5, 2))
# mpmath.quad of the weight at 30 digits
INFINITE_NORM = 149.99429198062992453
FINITE_NORM = 21.678771244348478118


def test_coulomb_exponents():
    for k in (2, 3, 7):
        w = RadialWeight.from_params(to_gche(CoulombProblem.from_k(k, 2), F(3, 4)).params)
        assert (w.p, w.lam, w.s) == (k - 2, F(-3, 2), -1)
        assert not w.finite


def test_exponents_solve_the_integrating_factor_equations():
    ex = derive_exponents(INFINITE)
    a2, a1, b2, b1, b0 = INFINITE.as_tuple()
    assert ex.A * a1 == b0 and ex.B * a2 == b2
    assert ex.A * a2 + ex.B * a1 + ex.C * a2 == b1
    assert self_adjoint_check(INFINITE) and self_adjoint_check(FINITE)


def test_domain_switches_with_sign_of_alpha2():
    w_inf = RadialWeight.from_params(INFINITE)
    w_fin = RadialWeight.from_params(FINITE)
    assert w_inf.domain == (0.0, math.inf)
    assert w_fin.domain == (0.0, 3.0)


def test_weight_eval():
    w = RadialWeight.from_params(INFINITE)
    r = 0.8
    direct = r ** float(w.p) * math.exp(float(w.lam) * r) * (1.5 + 0.5 * r) ** float(w.s)
    assert abs(weight_eval(w, r) - direct) < 1e-14 * direct
    # here a1 + a2 r = 1 at r = 1, leaving r^p e^{lam r}
    g = GcheParams(F(1, 2), F(1, 2), -1, 2, 1)
    wg = RadialWeight.from_params(g)
    assert abs(weight_eval(wg, 1.0) - math.exp(float(wg.lam))) < 1e-15
    assert weight_eval(w, 1e-12) < 1e-6  # p = 2/3 > 0
    with pytest.raises(ContractViolation):
        weight_eval(RadialWeight.from_params(FINITE), 3.5)


def test_flags_name_violations():
    bad = RadialWeight.from_params(GcheParams(1, 1, 1, 1, 1))
    assert bad.flags()["b2/a2 < 0"] is False
    with pytest.raises(WeightDomainError, match="b2/a2 < 0"):
        bad.require_integrable()


def test_normalization_frozen_values():
    wi = RadialWeight.from_params(INFINITE)
    wf = RadialWeight.from_params(FINITE)
    assert abs(normalization_closed_form(wi) / INFINITE_NORM - 1) < 1e-10
    assert abs(normalization_quadrature(wi) / INFINITE_NORM - 1) < 1e-10
    assert abs(normalization_closed_form(wf) / FINITE_NORM - 1) < 1e-10
    assert abs(normalization_quadrature(wf) / FINITE_NORM - 1) < 1e-10


def test_gamma_integral_sanity():
    # s = 0 leaves w = r^{1/2} e^{-r}, whose integral is Gamma(3/2)
    w = RadialWeight.from_params(GcheParams(1, 1, -1, F(3, 2), F(3, 2)))
    assert w.s == 0
    assert abs(normalization_closed_form(w) - math.gamma(1.5)) < 1e-12
    assert abs(normalization_quadrature(w) - math.gamma(1.5)) < 1e-12


def test_overlap_trivial_shift_matches_normalization():
    for p in (INFINITE, FINITE):
        w = RadialWeight.from_params(p)
        r = overlap_moments(w, 0, 0)
        assert abs(r.closed / normalization_closed_form(w) - 1) < 1e-10
        assert r.rel_gap < 1e-8


@pytest.mark.parametrize("seed", range(5))
def test_closed_forms_match_quadrature(seed):
    rng = random.Random(seed)
    for draw in (infinite_weight_params, finite_weight_params):
        w = RadialWeight.from_params(draw(rng))
        assert abs(normalization_closed_form(w) / normalization_quadrature(w) - 1) < 1e-8
        for i, j in ((0, 1), (1, 1), (2, 1)):
            assert overlap_moments(w, i, j).rel_gap < 1e-8


def test_closed_form_constraints():
    with pytest.raises(WeightDomainError):
        normalization_closed_form(RadialWeight.from_params(GcheParams(1, 1, 1, 1, 1)))
    # integer b on the infinite domain has no two-term form
    w = RadialWeight.from_params(GcheParams(1, 1, -1, 3, 1))
    assert w.b.denominator == 1
    with pytest.raises(WeightDomainError):
        overlap_moments(w, 0, 1)
    with pytest.raises(ContractViolation):
        overlap_moments(RadialWeight.from_params(INFINITE), -1, 0)


@pytest.mark.parametrize("params,n", [(INFINITE, 1), (INFINITE, 3), (FINITE, 2)])
def test_eigenfunctions_are_orthogonal(params, n):
    gram, norm = eigenfunction_orthogonality(params, n)
    m = len(gram)
    assert m == n + 1
    assert all(gram[i][i] > 0 for i in range(m))
    for i in range(m):
        for j in range(m):
            if i != j:
                assert abs(norm[i][j]) <= 1e-8
