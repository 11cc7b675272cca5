"""Command-line interface.

  rep-check --n --q --x [--tol]
  smatrix   --n --q --x1 --x2 [--dual-left] [--dual-right] --out FILE
  kmatrix   --n --q --x --eps LIST --method {paper,generic,closed-form}
            [--eps-aggregate C] [--branch {1,-1}] --out FILE
  verify    {ybe,re,coideal,sklyanin,b-comm} --n --q --rapidities LIST
            [--eps LIST] [--tol T] [--out FILE]
  scan      {eps,theta} --n --q ... --grid SPEC [--method M] --out FILE

Complex values are written "a+bi" or polar "r@phi"; --rapidities takes
theta values (x = e^theta internally), --x flags take x directly.

Exit codes: 0 success / verification passed, 1 verification failed,
2 invalid input, 3 degenerate solution space (dimension != 1 where a
unique matrix was requested).  Output files are written only after the
computation has fully succeeded.
"""

from __future__ import annotations

import argparse
import cmath
import itertools
import os
import sys
from pathlib import Path

import numpy as np

from . import io as qio
from .boundary import ClosedFormParams, closed_form_k, solve_paper_k
from .checks import (
    check_b_commutation,
    check_coideal_property,
    check_reflection_equation,
    check_sklyanin,
    check_ybe,
    eval_b_matrix,
    opposite_r,
    plain_r,
)
from .intertwiners import dimension_scan, reflection_dual, solve_boundary, solve_bulk
from .linalg import normalize_solution
from .reps import check_relations, dual_rep, vector_rep

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_DEGENERATE = 3


class CliError(ValueError):
    """Invalid command-line input."""


def parse_complex(text: str) -> complex:
    """Parse "a+bi" or polar "r@phi" notation."""
    raw = text.strip().replace(" ", "")
    if not raw:
        raise CliError("empty complex value")
    if "@" in raw:
        mod, _, phase = raw.partition("@")
        try:
            return float(mod) * cmath.exp(1j * float(phase))
        except ValueError as exc:
            raise CliError(f"bad polar value {text!r}") from exc
    try:
        return complex(raw.replace("i", "j"))
    except ValueError as exc:
        raise CliError(f"bad complex value {text!r}") from exc


def parse_complex_list(text: str) -> list:
    return [parse_complex(part) for part in text.split(",") if part.strip()]


def _pass_word(passed: bool) -> str:
    word = "PASS" if passed else "FAIL"
    if sys.stdout.isatty() and not os.environ.get("NO_COLOR"):
        color = "32" if passed else "31"
        return f"\x1b[{color}m{word}\x1b[0m"
    return word


def _print_report(report) -> None:
    print(
        f"{_pass_word(report.passed)}  {report.name}: "
        f"deviation={report.deviation:.6e}  tol={report.tol:.1e}  "
        f"lambda={report.lam:.6g}"
    )


def _require_unique(solution, what: str) -> np.ndarray:
    if solution.dimension == 0:
        raise Degenerate(f"no solution: nullspace dimension 0 ({what})")
    if solution.dimension != 1:
        raise Degenerate(f"degenerate solution space: dimension {solution.dimension} ({what})")
    return solution.normalized


class Degenerate(RuntimeError):
    pass


def _write_out(path: str, data: bytes) -> None:
    Path(path).write_bytes(data)


# --------------------------------------------------------------------------
# subcommands


def cmd_rep_check(args) -> int:
    rep = vector_rep(args.n, args.q, args.x)
    reports = [check_relations(rep, args.tol), check_relations(dual_rep(rep), args.tol)]
    for flavor, report in zip(("vector", "dual"), reports):
        print(f"{_pass_word(report.passed)}  algebra-relations[{flavor}]: "
              f"deviation={report.deviation:.6e}  tol={report.tol:.1e}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_smatrix(args) -> int:
    left = vector_rep(args.n, args.q, args.x1)
    right = vector_rep(args.n, args.q, args.x2)
    if args.dual_left:
        left = dual_rep(left)
    if args.dual_right:
        right = dual_rep(right)
    solution = solve_bulk(left, right, rel_tol=args.tol)
    matrix = _require_unique(solution, "bulk intertwiner")
    doc = qio.MatrixDocument(
        kind="smatrix",
        n=args.n,
        q=args.q,
        matrix=matrix,
        convention="antipode-dual",
        x=[args.x1, args.x2],
        eps=None,
        tol=args.tol,
    )
    _write_out(args.out, qio.serialize_matrix(doc))
    print(f"smatrix: dimension 1, residual {solution.residual:.3e}, wrote {args.out}")
    return EXIT_OK


def cmd_kmatrix(args) -> int:
    eps = args.eps
    if len(eps) != args.n + 1:
        raise CliError(f"--eps needs {args.n + 1} entries, got {len(eps)}")
    if args.method == "paper":
        solution = solve_paper_k(args.n, args.q, args.x, eps, rel_tol=args.tol)
        matrix = _require_unique(solution, "paper boundary system")
        convention = "paper"
        note = f"residual {solution.residual:.3e}"
    elif args.method == "generic":
        rep = vector_rep(args.n, args.q, args.x)
        solution = solve_boundary(rep, reflection_dual(rep), eps, rel_tol=args.tol)
        matrix = _require_unique(solution, "boundary intertwiner")
        convention = "antipode-dual"
        note = f"residual {solution.residual:.3e}"
    else:  # closed-form
        try:
            params = ClosedFormParams(eps, eps_aggregate=args.eps_aggregate, branch=args.branch)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        matrix = normalize_solution(closed_form_k(args.n, args.q, args.x, params))
        convention = "paper"
        note = "closed form"
    doc = qio.MatrixDocument(
        kind="kmatrix",
        n=args.n,
        q=args.q,
        matrix=matrix,
        convention=convention,
        x=[args.x],
        eps=list(eps),
        tol=args.tol,
    )
    _write_out(args.out, qio.serialize_matrix(doc))
    print(f"kmatrix[{args.method}]: {note}, wrote {args.out}")
    return EXIT_OK


def _engine_boundary_objects(n, q, thetas, eps, rel_tol):
    """Solve the K and S channels that the boundary checks consume."""
    x, y = (cmath.exp(t) for t in thetas[:2])
    mu = vector_rep(n, q, x)
    nu = vector_rep(n, q, y)
    mub = reflection_dual(mu)
    nub = reflection_dual(nu)
    objs = {"mu": mu, "nu": nu, "mub": mub, "nub": nub}
    objs["k_mu"] = _require_unique(solve_boundary(mu, mub, eps, rel_tol), "K_mu")
    objs["k_nu"] = _require_unique(solve_boundary(nu, nub, eps, rel_tol), "K_nu")
    for key, (a, b) in {
        "s_mn": (mu, nu),
        "s_m_nb": (mu, nub),
        "s_n_mb": (nu, mub),
        "s_nb_mb": (nub, mub),
    }.items():
        objs[key] = _require_unique(solve_bulk(a, b, rel_tol), f"S channel {key}")
    return objs


def cmd_verify(args) -> int:
    mode = args.check
    thetas = args.rapidities
    default_tol = 1e-12 if mode == "coideal" else 1e-8
    tol = args.tol if args.tol is not None else default_tol
    need = {"ybe": 3, "re": 2, "coideal": 2, "sklyanin": 3, "b-comm": 2}[mode]
    if len(thetas) != need:
        raise CliError(f"verify {mode} needs {need} rapidities, got {len(thetas)}")
    eps = args.eps
    if mode != "ybe":
        if eps is None:
            raise CliError(f"verify {mode} requires --eps")
        if len(eps) != args.n + 1:
            raise CliError(f"--eps needs {args.n + 1} entries, got {len(eps)}")

    n, q = args.n, args.q
    dim = n + 1
    rel_tol = 1e-9
    if mode == "ybe":
        xa, xb, xc = (cmath.exp(t) for t in thetas)
        ra, rb, rc = (vector_rep(n, q, v) for v in (xa, xb, xc))
        s_ab = _require_unique(solve_bulk(ra, rb, rel_tol), "S_ab")
        s_ac = _require_unique(solve_bulk(ra, rc, rel_tol), "S_ac")
        s_bc = _require_unique(solve_bulk(rb, rc, rel_tol), "S_bc")
        reports = [check_ybe(s_ab, s_ac, s_bc, (dim, dim, dim), tol,
                             context={"n": n, "rapidities": thetas})]
    elif mode == "re":
        objs = _engine_boundary_objects(n, q, thetas, eps, rel_tol)
        reports = [
            check_reflection_equation(
                objs["k_mu"], objs["k_nu"], objs["s_mn"], objs["s_m_nb"],
                objs["s_n_mb"], objs["s_nb_mb"], tol,
                context={"n": n, "rapidities": thetas, "eps": [str(e) for e in eps]},
            )
        ]
    elif mode == "coideal":
        xa, xb = (cmath.exp(t) for t in thetas)
        reports = [check_coideal_property(vector_rep(n, q, xa), vector_rep(n, q, xb), eps, tol)]
    elif mode == "b-comm":
        objs = _engine_boundary_objects(n, q, thetas, eps, rel_tol)
        b_nu = eval_b_matrix(
            objs["k_mu"],
            plain_r(objs["s_mn"], dim, dim),
            opposite_r(plain_r(objs["s_n_mb"], dim, dim), dim, dim),
        )
        b_nub = eval_b_matrix(
            objs["k_mu"],
            plain_r(objs["s_m_nb"], dim, dim),
            opposite_r(plain_r(objs["s_nb_mb"], dim, dim), dim, dim),
        )
        reports = [check_b_commutation(b_nu, b_nub, objs["k_nu"], tol,
                                       context={"n": n, "rapidities": thetas})]
    else:  # sklyanin
        objs = _engine_boundary_objects(n, q, thetas, eps, rel_tol)
        lam_rep = vector_rep(n, q, cmath.exp(thetas[2]))
        b1 = eval_b_matrix(
            objs["k_mu"],
            plain_r(_require_unique(solve_bulk(objs["mu"], lam_rep, rel_tol), "S(mu,lam)"),
                    dim, dim),
            opposite_r(
                plain_r(_require_unique(solve_bulk(lam_rep, objs["mub"], rel_tol), "S(lam,mub)"),
                        dim, dim), dim, dim),
        )
        b2 = eval_b_matrix(
            objs["k_nu"],
            plain_r(_require_unique(solve_bulk(objs["nu"], lam_rep, rel_tol), "S(nu,lam)"),
                    dim, dim),
            opposite_r(
                plain_r(_require_unique(solve_bulk(lam_rep, objs["nub"], rel_tol), "S(lam,nub)"),
                        dim, dim), dim, dim),
        )
        r_set = {
            "dims": (dim, dim, dim),
            "r_mu_nu": plain_r(objs["s_mn"], dim, dim),
            "r_mu_nubar": plain_r(objs["s_m_nb"], dim, dim),
            "prp_nubar_mubar": opposite_r(plain_r(objs["s_nb_mb"], dim, dim), dim, dim),
            "prp_nu_mubar": opposite_r(plain_r(objs["s_n_mb"], dim, dim), dim, dim),
        }
        reports = [check_sklyanin(b1, b2, r_set, tol, context={"n": n, "rapidities": thetas})]

    for report in reports:
        _print_report(report)
    if args.out:
        doc = qio.ReportDocument(
            kind=f"verify-{mode}",
            n=n,
            q=q,
            checks=reports,
            convention="antipode-dual" if mode in ("re", "sklyanin", "b-comm") else "n/a",
            rapidities=[complex(t) for t in thetas],
            eps=None if eps is None else list(eps),
            tol=tol,
        )
        _write_out(args.out, qio.serialize_report(doc))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def _parse_theta_grid(spec: str) -> list:
    parts = spec.split(":")
    if len(parts) != 3:
        raise CliError("theta grid spec must be start:stop:count")
    start, stop = parse_complex(parts[0]), parse_complex(parts[1])
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise CliError(f"bad grid count {parts[2]!r}") from exc
    if count < 1:
        raise CliError("grid count must be >= 1")
    if count == 1:
        return [start]
    return [start + (stop - start) * k / (count - 1) for k in range(count)]


def cmd_scan(args) -> int:
    n, q = args.n, args.q
    if args.axis == "eps":
        if args.x is None:
            raise CliError("scan eps requires --x")
        values = parse_complex_list(args.grid)
        if not values:
            raise CliError("empty eps grid")
        if len(values) ** (n + 1) > 200_000:
            raise CliError("eps grid too large")
        grid = [tuple(p) for p in itertools.product(values, repeat=n + 1)]
        fixed = {"n": n, "q": q, "x": args.x, "method": args.method}
        result = dimension_scan("boundary", fixed, grid)
        meta = {
            "scan": "eps",
            "n": n,
            "q": qio._pair(q),
            "x": qio._pair(args.x),
            "method": args.method,
            "convention": "paper" if args.method == "paper" else "antipode-dual",
        }
    else:  # theta
        thetas = _parse_theta_grid(args.grid)
        xs = [cmath.exp(t) for t in thetas]
        if args.kind == "bulk":
            if args.x is None:
                raise CliError("scan theta --kind bulk requires --x (left parameter)")
            fixed = {"n": n, "q": q, "x_left": args.x}
            result = dimension_scan("bulk", fixed, xs)
            meta = {"scan": "theta", "kind": "bulk", "n": n, "q": qio._pair(q),
                    "x_left": qio._pair(args.x)}
        else:
            if args.eps is None:
                raise CliError("scan theta --kind boundary requires --eps")
            if len(args.eps) != n + 1:
                raise CliError(f"--eps needs {n + 1} entries, got {len(args.eps)}")
            fixed = {"n": n, "q": q, "eps": tuple(args.eps), "method": args.method}
            result = dimension_scan("boundary", fixed, xs)
            meta = {
                "scan": "theta",
                "kind": "boundary",
                "n": n,
                "q": qio._pair(q),
                "eps": [qio._pair(e) for e in args.eps],
                "method": args.method,
                "convention": "paper" if args.method == "paper" else "antipode-dual",
            }
        result.grid = thetas  # record the thetas, not the exponentiated values
    _write_out(args.out, qio.serialize_scan(meta, result.grid, result.dims))
    print(f"scan: {len(result.dims)} points, dims "
          f"min={min(result.dims)} max={max(result.dims)}, wrote {args.out}")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qreflect",
        description="S-matrices and boundary reflection matrices from quantum affine symmetry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, x_flags=()):
        p.add_argument("--n", type=int, required=True, help="rank index n >= 1")
        p.add_argument("--q", type=parse_complex, required=True, help="deformation parameter")
        for flag in x_flags:
            p.add_argument(flag, type=parse_complex, required=True)

    p = sub.add_parser("rep-check", help="verify the algebra relations in a representation")
    common(p, ("--x",))
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_rep_check)

    p = sub.add_parser("smatrix", help="solve a bulk two-particle intertwiner")
    common(p, ("--x1", "--x2"))
    p.add_argument("--dual-left", action="store_true")
    p.add_argument("--dual-right", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("kmatrix", help="solve or evaluate a boundary reflection matrix")
    common(p, ("--x",))
    p.add_argument("--eps", type=parse_complex_list, required=True)
    p.add_argument("--method", choices=("paper", "generic", "closed-form"), default="paper")
    p.add_argument("--eps-aggregate", type=parse_complex, default=None)
    p.add_argument("--branch", type=int, choices=(1, -1), default=1)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_kmatrix)

    p = sub.add_parser("verify", help="run a nonlinear consistency check")
    p.add_argument("check", choices=("ybe", "re", "coideal", "sklyanin", "b-comm"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=parse_complex, required=True)
    p.add_argument("--rapidities", type=parse_complex_list, required=True,
                   help="theta values; x = e^theta")
    p.add_argument("--eps", type=parse_complex_list, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="record nullspace dimensions over a grid")
    p.add_argument("axis", choices=("eps", "theta"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=parse_complex, required=True)
    p.add_argument("--x", type=parse_complex, default=None)
    p.add_argument("--eps", type=parse_complex_list, default=None)
    p.add_argument("--grid", required=True,
                   help="eps: comma-separated values; theta: start:stop:count")
    p.add_argument("--kind", choices=("bulk", "boundary"), default="boundary")
    p.add_argument("--method", choices=("paper", "generic"), default="paper")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        # underflow stays benign; anything NaN-producing becomes exit 2
        with np.errstate(divide="raise", invalid="raise", over="raise"):
            return args.func(args)
    except Degenerate as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (CliError, ValueError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
