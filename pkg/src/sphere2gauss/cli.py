"""Command-line front end: subcommands, deterministic CSV/JSON emission.

Exit codes: 0 success, 1 computational failure (solver bracketing,
truncation sensitivity, residual above tolerance), 2 usage error.  Errors
go to stderr as a single machine-readable line prefixed ``error:``.

Floats are printed in scientific notation with 17 significant digits;
exact rational columns are printed as ``p/q`` strings.  JSON output is one
object ``{meta, rows}`` whose rows mirror the CSV rows.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .convergence import (canonical_schedule, check_hypotheses,
                          closed_spectrum_table, dirichlet_convergence_table,
                          eigenfunction_comparison)
from .eigensolve import SolverError, cap_eigenvalue, halfline_eigenvalue, nu_of_s
from .harmonics import (build_family, build_P, build_Q_gauss, build_Q_sphere,
                        check_harmonic, ou_apply,
                        projected_eigenspace_dimension)
from .heatflow import (SpectralCoefficients, gauss_basis, heat_convergence_table,
                       heat_evolve, recovery_sequence)
from .indices import MultiIndex, enumerate_multi_indices, gauss_multiplicity, sphere_multiplicity
from .polyalg import LiftedPoly, dumps, dumps_lifted


DEFAULT_SEED = 42


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.16e}"
    return str(v)


def _emit(args, columns: list[str], rows: list[dict], meta: dict) -> None:
    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    try:
        if args.format == "json":
            payload = {"meta": meta,
                       "rows": [{c: _fmt(r.get(c, "")) for c in columns} for r in rows]}
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(columns)
            for r in rows:
                writer.writerow([_fmt(r.get(c, "")) for c in columns])
    finally:
        if out is not sys.stdout:
            out.close()


def _emit_plot(path: str, pairs: list[tuple]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y"])
        for x, y in pairs:
            writer.writerow([_fmt(x), _fmt(y)])


def _meta(args, command: str) -> dict:
    return {"command": command, "seed": args.seed, "version": __version__}


def _parse_multi_index(tokens: list[str]) -> MultiIndex:
    return MultiIndex(tuple(int(t) for t in tokens))


def _read_coeffs(path: str, n: int) -> dict:
    """Lines of "K_1 K_2 ... K_n value"; blank lines and # comments skipped."""
    entries = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != n + 1:
                raise ValueError(f"{path}:{lineno}: expected {n} indices and a value")
            K = _parse_multi_index(parts[:n])
            entries[K] = float(parts[n])
    return entries


def _read_schedule(path: str):
    """CSV with columns (N, a_N, theta_N); returns a schedule callable."""
    table = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip() or row[0].strip().lower() == "n":
                continue
            N, a, theta = int(row[0]), float(row[1]), float(row[2])
            table[N] = (a, theta)

    def schedule(N: int):
        if N not in table:
            raise ValueError(f"N = {N} not present in the schedule file")
        return table[N]

    return schedule


def _eigen_row(result, tol: float) -> tuple[dict, bool]:
    """Row for an eigenvalue, or an error record if the certificate fails."""
    if result.residual > tol:
        return ({"error": f"residual {result.residual:.3g} exceeds tolerance {tol:.3g}"},
                False)
    return ({"lambda": result.lam, "residual": result.residual,
             "zeros": result.zeros, "iterations": result.iterations}, True)


# -- subcommand handlers ---------------------------------------------------


def _cmd_closed_spectrum(args) -> int:
    rows = []
    if args.space == "sphere":
        a2 = Fraction(args.a) ** 2
        for k in range(args.kmax + 1):
            rows.append({"k": k, "lambda": Fraction(k * (k + args.N - 1)) / a2,
                         "multiplicity": sphere_multiplicity(args.N, k)})
        columns = ["k", "lambda", "multiplicity"]
    else:
        alpha2 = Fraction(args.alpha) ** 2
        for k in range(args.kmax + 1):
            rows.append({"k": k, "lambda": Fraction(k) / alpha2,
                         "multiplicity": gauss_multiplicity(args.n, k)})
        columns = ["k", "lambda", "multiplicity"]
    _emit(args, columns, rows, _meta(args, "closed-spectrum"))
    if args.emit_plot_data:
        _emit_plot(args.emit_plot_data, [(r["k"], r["lambda"]) for r in rows])
    return 0


def _cmd_converge_closed(args) -> int:
    table = closed_spectrum_table(args.n, Fraction(args.alpha), args.kmax, args.N)
    rows = [{"N": r.N, "k": r.k, "lhs": r.lhs, "rhs": r.rhs, "abs_err": r.abs_err}
            for r in table]
    _emit(args, ["N", "k", "lhs", "rhs", "abs_err"], rows,
          _meta(args, "converge-closed"))
    if args.emit_plot_data:
        _emit_plot(args.emit_plot_data,
                   [(r["N"], r["abs_err"]) for r in rows if r["k"] == args.kmax])
    return 0


def _cmd_cap_eigen(args) -> int:
    result = cap_eigenvalue(args.N, args.a, args.theta, args.k, args.j, args.tol)
    row, ok = _eigen_row(result, args.tol)
    row.update({"N": args.N, "a": args.a, "theta": args.theta,
                "k": args.k, "j": args.j})
    _emit(args, ["N", "a", "theta", "k", "j", "lambda", "residual", "zeros",
                 "iterations", "error"], [row], _meta(args, "cap-eigen"))
    return 0 if ok else 1


def _cmd_halfspace_eigen(args) -> int:
    result = halfline_eigenvalue(args.alpha, args.R, args.k, args.j, args.tol)
    row, ok = _eigen_row(result, args.tol)
    row.update({"alpha": args.alpha, "R": args.R, "k": args.k, "j": args.j})
    _emit(args, ["alpha", "R", "k", "j", "lambda", "residual", "zeros",
                 "iterations", "error"], [row], _meta(args, "halfspace-eigen"))
    return 0 if ok else 1


def _cmd_converge_dirichlet(args) -> int:
    schedule = _read_schedule(args.schedule) if args.schedule else None
    table = dirichlet_convergence_table(args.alpha, args.R, args.N, args.tol,
                                        schedule=schedule)
    rows, ok = [], True
    for r in table:
        row = {"N": r.N, "lhs": r.lhs, "rhs": r.rhs, "abs_err": r.abs_err,
               "residual_lhs": r.residual_lhs, "residual_rhs": r.residual_rhs,
               "hyp_ok": r.hypotheses_ok, "note": r.note}
        if not r.note and (r.residual_lhs > args.tol or r.residual_rhs > args.tol):
            row = {"N": r.N, "note": r.note,
                   "error": "residual exceeds tolerance"}
            ok = False
        rows.append(row)
    _emit(args, ["N", "lhs", "rhs", "abs_err", "residual_lhs", "residual_rhs",
                 "hyp_ok", "note", "error"], rows, _meta(args, "converge-dirichlet"))
    if args.emit_plot_data:
        _emit_plot(args.emit_plot_data,
                   [(r["N"], r["abs_err"]) for r in rows if "abs_err" in r])
    return 0 if ok else 1


def _cmd_nu(args) -> int:
    Ns = list(range(args.N_from, args.N_to + 1))

    def one(N):
        return nu_of_s(N, args.s, args.tol)

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        values = list(pool.map(one, Ns))
    rows = [{"N": N, "s": args.s, "nu": v} for N, v in zip(Ns, values)]
    _emit(args, ["N", "s", "nu"], rows, _meta(args, "nu"))
    if args.emit_plot_data:
        _emit_plot(args.emit_plot_data, [(r["N"], r["nu"]) for r in rows])
    return 0


def _cmd_heat(args) -> int:
    entries = _read_coeffs(args.coeffs, args.n)
    f = SpectralCoefficients(args.n, entries, gauss_basis(args.alpha))
    table = heat_convergence_table(f, args.t, args.N)
    rows = [{"N": r.N, "l2_distance": r.l2_distance,
             "energy_sphere": r.energy_sphere, "energy_gauss": r.energy_gauss}
            for r in table]
    _emit(args, ["N", "l2_distance", "energy_sphere", "energy_gauss"], rows,
          _meta(args, "heat"))
    if args.emit_plot_data:
        _emit_plot(args.emit_plot_data, [(r["N"], r["l2_distance"]) for r in rows])
    return 0


def _cmd_cheeger(args) -> int:
    entries = _read_coeffs(args.coeffs, args.n)
    f = SpectralCoefficients(args.n, entries, gauss_basis(args.alpha))
    e_gauss = f.energy()
    rows = []
    for N in args.N:
        g = recovery_sequence(f, N)
        e_sphere = g.energy()
        rel = abs(e_sphere - e_gauss) / e_gauss if e_gauss else 0.0
        rows.append({"N": N, "energy_sphere": e_sphere, "energy_gauss": e_gauss,
                     "rel_err": rel, "l2_norm_recovery": g.l2_norm()})
    _emit(args, ["N", "energy_sphere", "energy_gauss", "rel_err",
                 "l2_norm_recovery"], rows, _meta(args, "cheeger"))
    return 0


def _verify_harmonicity() -> bool:
    for n in range(1, 5):
        for N in range(max(2, n), 17):
            for k in range(0, 7):
                for K in enumerate_multi_indices(n, k):
                    P = build_P(N, n, K)
                    ok, _ = check_harmonic(P)
                    if not ok:
                        return False
    return True


def _verify_ou() -> bool:
    for n in range(1, 5):
        for alpha2 in (Fraction(1), Fraction(2), Fraction(1, 2)):
            for k in range(0, 7):
                for K in enumerate_multi_indices(n, k):
                    Q = build_Q_gauss(n, K, alpha2)
                    lhs = ou_apply(Q, alpha2)
                    rhs = Q * Fraction(-k, 1) / alpha2
                    if lhs != rhs:
                        return False
    return True


def _verify_dimension() -> bool:
    for n in range(1, 5):
        for N in range(max(2, n + 1), 13):
            for k in range(0, 6):
                if projected_eigenspace_dimension(N, n, k) != gauss_multiplicity(n, k):
                    return False
    return True


_SUITES = {
    "harmonicity": (_verify_harmonicity, "harmonicity n<=4 N<=16 |K|<=6"),
    "ou": (_verify_ou, "ou n<=4 |K|<=6 alpha2 in {1,2,1/2}"),
    "dimension": (_verify_dimension, "dimension n<=4 N<=12 k<=5"),
}


def _cmd_verify(args) -> int:
    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in suites:
        fn, label = _SUITES[name]
        ok = fn()
        print(("PASS " if ok else "FAIL ") + label)
        failed |= not ok
    return 1 if failed else 0


def _cmd_dump_poly(args) -> int:
    K = _parse_multi_index(args.K)
    n = len(args.K)
    if args.which == "P":
        poly = build_P(args.N, n, K)
    elif args.which == "Q-sphere":
        poly = build_Q_sphere(args.N, n, K, Fraction(args.a) ** 2)
    else:
        poly = build_Q_gauss(n, K, Fraction(args.alpha) ** 2)
    print(dumps_lifted(poly) if isinstance(poly, LiftedPoly) else dumps(poly))
    return 0


# -- parser ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")
    p.add_argument("--seed", type=int,
                   default=int(os.environ.get("SPHERE2GAUSS_SEED", DEFAULT_SEED)))
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--quad-order", type=int, default=48)
    p.add_argument("--panels", type=int, default=16)
    p.add_argument("--emit-plot-data", metavar="PATH",
                   help="also write (x, y) CSV pairs to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphere2gauss",
        description="Spectral convergence of high-dimensional spheres to Gaussian spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closed-spectrum", help="eigenvalues and multiplicities")
    p.add_argument("--space", choices=("sphere", "gauss"), default="sphere")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--a", default="1")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--alpha", default="1")
    p.add_argument("--kmax", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_closed_spectrum)

    p = sub.add_parser("converge-closed", help="closed-spectrum convergence table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--N", type=int, nargs="+", required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_converge_closed)

    p = sub.add_parser("cap-eigen", help="Dirichlet eigenvalue of a spherical cap")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-8)
    _add_common(p)
    p.set_defaults(handler=_cmd_cap_eigen)

    p = sub.add_parser("halfspace-eigen",
                       help="Dirichlet eigenvalue of a Gaussian half-space slice")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-8)
    _add_common(p)
    p.set_defaults(handler=_cmd_halfspace_eigen)

    p = sub.add_parser("converge-dirichlet",
                       help="cap-versus-half-line convergence table")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--N", type=int, nargs="+", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--schedule", metavar="FILE",
                   help="CSV with columns (N, a_N, theta_N) overriding the default schedule")
    _add_common(p)
    p.set_defaults(handler=_cmd_converge_dirichlet)

    p = sub.add_parser("nu", help="Friedland-Hayman exponent table")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--N-from", dest="N_from", type=int, required=True)
    p.add_argument("--N-to", dest="N_to", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-7)
    _add_common(p)
    p.set_defaults(handler=_cmd_nu)

    p = sub.add_parser("heat", help="heat-flow convergence table")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--N", type=int, nargs="+", required=True)
    p.add_argument("--coeffs", required=True,
                   help="file with lines 'K_1 ... K_n value'")
    _add_common(p)
    p.set_defaults(handler=_cmd_heat)

    p = sub.add_parser("cheeger", help="Cheeger-energy recovery sequence")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--N", type=int, nargs="+", required=True)
    p.add_argument("--coeffs", required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_cheeger)

    p = sub.add_parser("verify", help="exact verification suites")
    p.add_argument("--suite", choices=tuple(_SUITES) + ("all",), default="all")
    _add_common(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("dump-poly", help="print a lift polynomial")
    p.add_argument("--which", choices=("P", "Q-sphere", "Q-gauss"), default="P")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--K", nargs="+", required=True, help="multi-index entries")
    p.add_argument("--a", default="1")
    p.add_argument("--alpha", default="1")
    _add_common(p)
    p.set_defaults(handler=_cmd_dump_poly)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except (SolverError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
