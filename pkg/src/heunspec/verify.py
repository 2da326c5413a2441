"""Property suites behind ``heunspec verify``.

Each suite returns a list of checks ``{"name", "passed", "gap"}``; gaps of
exact identities are rationals and are reported as "p/q" strings.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import coulomb as cl
from . import heun, orthopoly, weights
from .oracle.fd import FdGrid, fd_spectrum, match_eigenvalue
from .sampling import finite_weight_params, generic_params, infinite_weight_params, jacobi_params

FD_TOL = 5e-4
WEIGHT_TOL = 1e-8


def _check(name, passed, gap):
    if isinstance(gap, Fraction):
        gap = str(gap)
    else:
        gap = repr(float(gap))
    return {"name": name, "passed": bool(passed), "gap": gap}


def _exact_gap(pairs):
    return max((abs(a - b) for a, b in pairs), default=Fraction(0))


def ortho_suite(seed: int = 0, draws: int = 8, n_max: int = 4) -> list:
    rng = random.Random(seed)
    out = []
    for t in range(draws):
        p = generic_params(rng)
        n = 1 + t % n_max
        a2, a1, b2, b1, b0 = p.as_tuple()
        seq = orthopoly.generate_P(p, n, n + 1)
        cd = [orthopoly.christoffel_darboux_gap(seq, Fraction(1, 3), Fraction(-2), m) for m in range(n + 1)]
        cd += [orthopoly.christoffel_darboux_confluent(seq, Fraction(5, 4), m) for m in range(n + 1)]
        gap = _exact_gap(cd)
        out.append(_check(f"cd[{t}] n={n}", gap == 0, gap))
        q = orthopoly.q_norms_and_cd(p, n, 3, [(0, 1), (Fraction(1, 2), Fraction(1, 2))])
        out.append(_check(f"q_cd_norms[{t}] n={n}", q.ok, _exact_gap(q.cd_gaps)))
        table = orthopoly.norms(p, n, n + 5)
        vanish = all(v == 0 for v in table.values[n + 1 :])
        out.append(_check(f"norms[{t}] n={n}", table.agree and vanish, Fraction(0)))
        mu = orthopoly.moments(p, n, 4)
        expected = (
            1,
            0,
            -n * b0 * b2,
            -n * b0 * b1 * b2,
            n * b0 * b2 * (2 * a1 * b2 * (n - 1) + b0 * b2 * (3 * n - 2) - b1 * b1),
        )
        gap = _exact_gap(zip(mu.values, expected))
        out.append(_check(f"moments[{t}] n={n}", gap == 0, gap))
        ids = [c for k in range(n + 1) for c in orthopoly.weighted_identities(p, n, k)]
        gap = _exact_gap((c.value, c.expected) for c in ids)
        out.append(_check(f"weighted[{t}] n={n}", gap == 0, gap))
        try:
            orthopoly.factorize(p, n, n + 5)
            ok = True
        except Exception:
            ok = False
        out.append(_check(f"factorize[{t}] n={n}", ok, Fraction(0 if ok else 1)))
        regen = orthopoly.regenerate_from_moments(p, n)
        ok = all(regen[j] == seq[j] for j in range(n + 1))
        out.append(_check(f"regenerate[{t}] n={n}", ok, Fraction(0 if ok else 1)))
        det = heun.tridiagonal_determinant(heun.tridiagonal_system(p, n).matrix())
        ok = det == heun.delta_sequence(p, n)[-1]
        out.append(_check(f"determinant[{t}] n={n}", ok, Fraction(0 if ok else 1)))
        jp = jacobi_params(rng)
        rep = heun.interlacing_report(jp, n)
        out.append(_check(f"interlacing[{t}] n={n}", rep.regime_positive and rep.strictly_interlaced, Fraction(0)))
    return out


def coulomb_suite(seed: int = 0, fd_points: int = 4000, r_max: float = 40.0) -> list:
    out = []
    bad = [k for k in range(2, 13) if [l.energy for l in cl.spectrum(cl.CoulombProblem.from_k(k, 1))] != [1]]
    out.append(_check("n=1 ground line", not bad, Fraction(len(bad))))
    ok = all(
        cl.reduced_critical_polynomial(cl.CoulombProblem.from_k(k, 2))
        == cl.RationalPoly((2 * k, -3 * (k + 1), k + 1), cl.E)
        for k in range(2, 13)
    )
    out.append(_check("n=2 quadratic", ok, Fraction(0 if ok else 1)))
    ok = True
    for n in range(1, 6):
        for k in range(2, 9):
            prob = cl.CoulombProblem.from_k(k, n)
            if cl.determinant_polynomial(prob) != cl.energy_polynomials(prob)[n + 1] * (-1) ** (n + 1):
                ok = False
            cl.coulomb_quotients(prob, 3)
    out.append(_check("determinant and quotients", ok, Fraction(0 if ok else 1)))
    red = cl.laguerre_reduction(8)
    ok = red.matches_critical and len(set(red.ratios)) == 1 and None not in red.ratios
    out.append(_check("laguerre proportionality", ok, Fraction(0 if ok else 1)))
    out.append(_check("laguerre roots", red.max_gap <= 1e-10, red.max_gap))
    worst = 0.0
    grid = FdGrid.standard(r_max, fd_points)
    for n, k in ((1, 3), (1, 5), (2, 5), (3, 3)):
        prob = cl.CoulombProblem.from_k(k, n)
        for line in cl.spectrum(prob):
            target = float(line.eigenvalue)
            eigs = fd_spectrum(float(line.coupling), k, grid, n + 1)
            worst = max(worst, match_eigenvalue(target, eigs).gap)
    out.append(_check("fd agreement", worst <= FD_TOL, worst))
    return out


def weights_suite(seed: int = 0, draws: int = 6) -> list:
    rng = random.Random(seed)
    out = []
    worst = 0.0
    for _ in range(draws):
        for draw in (infinite_weight_params, finite_weight_params):
            w = weights.RadialWeight.from_params(draw(rng))
            pairs = [(weights.normalization_closed_form(w), weights.normalization_quadrature(w))]
            for i, j in ((0, 1), (1, 1), (1, 2)):
                r = weights.overlap_moments(w, i, j)
                pairs.append((r.closed, r.quadrature))
            worst = max(worst, max(abs(a - b) / abs(b) for a, b in pairs))
    out.append(_check("closed forms vs quadrature", worst <= WEIGHT_TOL, worst))
    worst = 0.0
    for t in range(draws):
        p = jacobi_params(rng)
        if p.alpha2 < 0:
            # finite support needs s > -1 as well; redraw from the finite family
            p = finite_weight_params(rng)
            if p.beta2 >= 0:
                continue
        w = weights.RadialWeight.from_params(p)
        if not w.integrable:
            continue
        _, norm = weights.eigenfunction_orthogonality(p, 1 + t % 3)
        m = len(norm)
        worst = max([worst] + [abs(norm[i][j]) for i in range(m) for j in range(m) if i != j])
    out.append(_check("eigenfunction orthogonality", worst <= WEIGHT_TOL, worst))
    sa = all(weights.self_adjoint_check(infinite_weight_params(rng)) for _ in range(draws))
    out.append(_check("self-adjoint form", sa, Fraction(0 if sa else 1)))
    return out


SUITES = {"ortho": ortho_suite, "coulomb": coulomb_suite, "weights": weights_suite}


def run(suite: str, seed: int = 0) -> dict:
    names = list(SUITES) if suite == "all" else [suite]
    report = {}
    for name in names:
        report[name] = SUITES[name](seed)
    return report
