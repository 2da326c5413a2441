"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical failure,
3 oracle or tolerance failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import coulomb as cl
from . import verify as vf
from .errors import ContractViolation, HeunSpecError, InsufficientResolution, SolvabilityError
from .heun import GcheParams, coefficients, epsilon0_roots
from .numeric import resolve_digits, to_mpf, workdps
from .oracle.fd import FdGrid, fd_spectrum, match_eigenvalue
from .oracle.special import laguerre_roots
from .polycore import as_fraction
from .records import ResultRecord, encode_number, timestamps

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_ORACLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        # let "-5/7" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(token: str) -> Fraction:
    try:
        return as_fraction(token)
    except ContractViolation:
        raise argparse.ArgumentTypeError(f"malformed rational {token!r}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- solve-gche ---------------------------------------------------------------


def cmd_solve_gche(args) -> int:
    try:
        params = GcheParams(args.alpha2, args.alpha1, args.beta2, args.beta1, args.beta0)
    except ContractViolation as exc:
        raise UsageError(str(exc)) from exc
    digits = resolve_digits(args.digits)
    tol = Fraction(1, 10**digits) if args.tol is None else args.tol
    cond = epsilon0_roots(params, args.n, tol=tol, digits=digits)
    if not cond.epsilon0_roots:
        raise SolvabilityError("characteristic polynomial has no real roots")
    roots, coeffs, residuals = [], [], []
    with workdps(digits):
        for i, b in enumerate(cond.epsilon0_roots, start=1):
            sol = coefficients(params, args.n, b, root_index=i, digits=digits)
            val = b.exact if b.exact is not None else b.to_mpf()
            roots.append({"index": i, "epsilon0": encode_number(val, digits, tol), "multiplicity": b.multiplicity})
            coeffs.append([encode_number(c, digits) for c in sol.coefficients])
            residuals.append(
                {"index": i, "residual_sup": encode_number(sol.residual_sup, digits), "overflow": encode_number(sol.overflow, digits), "consistent": sol.consistent}
            )
    rec = ResultRecord(
        mode="gche",
        problem={"params": params.as_dict(), "n": args.n, "epsilon1": str(cond.epsilon1)},
        roots=roots,
        coefficients=coeffs,
        verification={"residuals": residuals, "real_simple_guaranteed": cond.real_simple_guaranteed},
        extra={"characteristic": [str(c) for c in cond.characteristic.coeffs]},
        timestamps=timestamps(args.timestamp),
    )
    _emit(rec.to_json(), args.out)
    return EXIT_OK if all(r["consistent"] for r in residuals) else EXIT_MATH


# -- solve-coulomb --------------------------------------------------------------


def coulomb_record(d, ell, n, digits, verify_fd=False, fd_points=4000, r_max=40.0, requested_v=None, stamp=False):
    try:
        prob = cl.CoulombProblem(d, ell, n)
    except ContractViolation as exc:
        raise UsageError(str(exc)) from exc
    if n < 1:
        raise UsageError("--nn must be at least 1")
    lines = cl.spectrum(prob, digits=digits)
    tol = Fraction(1, 10**digits)
    roots, coeffs = [], []
    fd = []
    with workdps(digits):
        for line in lines:
            entry = {
                "index": line.index,
                "energy": encode_number(line.energy, digits, tol),
                "coupling": encode_number(line.coupling, digits, tol),
                "E": encode_number(line.eigenvalue, digits, tol),
                "node_count": line.node_count,
            }
            if requested_v is not None:
                entry["coupling_gap"] = encode_number(abs(to_mpf(line.coupling) - to_mpf(requested_v)), digits)
            roots.append(entry)
            coeffs.append([encode_number(c, digits) for c in line.coefficients])
            if verify_fd:
                grid = FdGrid.standard(r_max, fd_points)
                eigs = fd_spectrum(float(line.coupling), prob.k, grid, n + 1)
                m = match_eigenvalue(float(line.eigenvalue), eigs)
                fd.append({"index": line.index, "fd_index": m.index, "fd_value": encode_number(m.value, tol="O(h^2)"), "gap": encode_number(m.gap, tol="O(h^2)"), "passed": m.gap <= vf.FD_TOL})
    verification = {"heun_agreement": encode_number(float(cl.heun_root_agreement(prob, digits=digits)))}
    if verify_fd:
        verification["fd"] = fd
        verification["fd_grid"] = {"points": fd_points, "r_max": r_max, "tolerance": vf.FD_TOL}
    red = cl.reduced_critical_polynomial(prob)
    crit = cl.energy_polynomials(prob)[n + 1]
    return ResultRecord(
        mode="coulomb",
        problem={"d": d, "ell": ell, "n": n, "k": prob.k},
        roots=roots,
        coefficients=coeffs,
        verification=verification,
        extra={
            "critical_polynomial": [str(c) for c in crit.coeffs],
            "reduced_critical_polynomial": [str(c) for c in red.coeffs],
            **({"requested_coupling": str(requested_v)} if requested_v is not None else {}),
        },
        timestamps=timestamps(stamp),
    )


def cmd_solve_coulomb(args) -> int:
    digits = resolve_digits(args.digits)
    requested = None
    if (args.e2z is None) != (args.cutoff is None):
        raise UsageError("--e2z and --cutoff go together")
    if args.e2z is not None:
        requested = args.e2z * args.cutoff
    rec = coulomb_record(args.d, args.ell, args.nn, digits, args.verify_fd, args.fd_points, args.r_max, requested, args.timestamp)
    _emit(rec.to_json(), args.out)
    if args.verify_fd and not all(f["passed"] for f in rec.verification["fd"]):
        return EXIT_ORACLE
    return EXIT_OK


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    report = vf.run(args.suite, args.seed)
    passed = all(c["passed"] for checks in report.values() for c in checks)
    out = {"suite": args.suite, "seed": args.seed, "passed": passed, "checks": report}
    _emit(json.dumps(out, indent=2, sort_keys=True), args.out)
    return EXIT_OK if passed else EXIT_ORACLE


# -- plot-data ------------------------------------------------------------------

PLOT_HEADER = ["r", "V", "psi", "E"]


def _curve_rows(k: int, n: int, index: int, samples: int, r_max: float, digits: int):
    prob = cl.CoulombProblem.from_k(k, n)
    lines = cl.spectrum(prob, digits=digits)
    if not 1 <= index <= len(lines):
        raise UsageError(f"root index must be in 1..{len(lines)}")
    line = lines[index - 1]
    v = float(line.coupling)
    e = float(line.eigenvalue)
    rows = []
    for i in range(samples):
        r = r_max * (i + 1) / samples
        pot = (k - 1) * (k - 3) / (4 * r * r) - v / (r + 1)
        rows.append([f"{r:.17g}", f"{pot:.17g}", f"{float(cl.wavefunction(line, prob, r)):.17g}", f"{e:.17g}"])
    return rows


def _write_csv(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def cmd_plot_data(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    digits = resolve_digits(args.digits)
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    written = []
    if args.figure == 1:
        for k in (3, 4, 5):
            p = out_dir / f"fig1_k{k}.csv"
            _write_csv(p, PLOT_HEADER, _curve_rows(k, 1, 1, args.samples, args.r_max, digits))
            written.append(p)
    elif args.figure == 2:
        for i in (1, 2):
            p = out_dir / f"fig2_k5_root{i}.csv"
            _write_csv(p, PLOT_HEADER, _curve_rows(5, 2, i, args.samples, args.r_max, digits))
            written.append(p)
    elif args.figure == 3:
        rows = []
        for n in range(1, 7):
            for i, x in enumerate(laguerre_roots(n, 1.0), start=1):
                rows.append([n, i, f"{x / 2:.17g}"])
        p = out_dir / "fig3_laguerre_roots.csv"
        _write_csv(p, ["n", "index", "energy"], rows)
        written.append(p)
    else:
        if args.k is None or args.n is None or args.root is None:
            raise UsageError("give --figure or all of --k, --n, --root")
        p = out_dir / f"curve_k{args.k}_n{args.n}_root{args.root}.csv"
        _write_csv(p, PLOT_HEADER, _curve_rows(args.k, args.n, args.root, args.samples, args.r_max, digits))
        written.append(p)
    for p in written:
        sys.stdout.write(f"{p}\n")
    return EXIT_OK


# -- sweep ------------------------------------------------------------------------


def _sweep_cell(cell):
    k, n, digits = cell
    return json.loads(coulomb_record(k, 0, n, digits).to_json())


def cmd_sweep(args) -> int:
    digits = resolve_digits(args.digits)
    cells = [(k, n, digits) for n in range(1, args.n_max + 1) for k in range(args.k_min, args.k_max + 1)]
    if args.k_min < 2:
        raise UsageError("--k-min must be at least 2")
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_sweep_cell, cells))
    else:
        results = [_sweep_cell(c) for c in cells]
    _emit(json.dumps({"schema_version": "1.0", "cells": results}, indent=2, sort_keys=True), args.out)
    return EXIT_OK


# -- wiring -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heunspec", description="Polynomial solutions of the confluent Heun equation and softcore Coulomb spectra.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("solve-gche", help="roots and coefficients for given Heun coefficients")
    for name in ("alpha2", "alpha1", "beta2", "beta1", "beta0"):
        g.add_argument(f"--{name}", type=_rational, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--tol", type=_rational)
    g.add_argument("--digits", type=int)
    g.add_argument("--out")
    g.add_argument("--timestamp", action="store_true")
    g.set_defaults(func=cmd_solve_gche)

    c = sub.add_parser("solve-coulomb", help="closed-form softcore Coulomb lines")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--ell", type=int, default=0)
    c.add_argument("--nn", type=int, required=True, help="polynomial degree n")
    c.add_argument("--verify-fd", action="store_true")
    c.add_argument("--fd-points", type=int, default=4000)
    c.add_argument("--r-max", type=float, default=40.0)
    c.add_argument("--e2z", type=_rational, help="charge factor; with --cutoff gives v = cutoff*e2z")
    c.add_argument("--cutoff", type=_rational)
    c.add_argument("--digits", type=int)
    c.add_argument("--out")
    c.add_argument("--timestamp", action="store_true")
    c.set_defaults(func=cmd_solve_coulomb)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", choices=["ortho", "coulomb", "weights", "all"], default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot-data", help="CSV data for the potential/eigenstate figures")
    p.add_argument("--figure", type=int, choices=[1, 2, 3])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--root", type=int)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--r-max", type=float, default=10.0)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--digits", type=int)
    p.set_defaults(func=cmd_plot_data)

    s = sub.add_parser("sweep", help="solve-coulomb over a grid of (k, n)")
    s.add_argument("--n-max", type=int, default=3)
    s.add_argument("--k-min", type=int, default=2)
    s.add_argument("--k-max", type=int, default=6)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--digits", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"heunspec: error: {exc}\n")
        return EXIT_USAGE
    except (SolvabilityError, ContractViolation) as exc:
        sys.stderr.write(f"heunspec: mathematical failure: {exc}\n")
        return EXIT_MATH
    except InsufficientResolution as exc:
        sys.stderr.write(f"heunspec: oracle failure: {exc}\n")
        return EXIT_ORACLE
    except HeunSpecError as exc:
        sys.stderr.write(f"heunspec: mathematical failure: {exc}\n")
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
