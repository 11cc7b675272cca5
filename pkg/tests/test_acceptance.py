"""Acceptance suite.

One test per acceptance criterion, each printing a single PASS/FAIL line
(run with ``pytest -s tests/test_acceptance.py`` to see them).  Tolerances
are pinned here and nowhere else.
"""

import itertools

import numpy as np

from conftest import engine_point, eps_star, generic_point
from qreflect.boundary import ClosedFormParams, closed_form_k, solve_paper_k
from qreflect.checks import (
    check_b_commutation,
    check_coideal_property,
    check_reflection_equation,
    check_sklyanin,
    check_ybe,
    eval_b_matrix,
    opposite_r,
    plain_r,
)
from qreflect.cli import main as cli_main
from qreflect.intertwiners import solve_bulk
from qreflect.linalg import projective_compare
from qreflect.reps import check_relations, dual_rep, vector_rep

Q_REF = 0.8 * np.exp(0.3j)
THETAS = (0.7, 0.23, -0.41)

# engine-convention points with one-dimensional K and S channels (measured)
ENGINE_POINTS = {
    1: [(0.0, 0.0), (1.0, 1.0)],
    2: [(0.0, 0.0, 0.0), (eps_star(Q_REF),) * 3],
}


def _verdict(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_representation_relations():
    worst = 0.0
    for n in (1, 2, 3, 4):
        rng = np.random.default_rng(1000 + n)
        for _ in range(10):
            q, x = generic_point(rng)
            rep = vector_rep(n, q, x)
            worst = max(
                worst,
                check_relations(rep, tol=1e-10).deviation,
                check_relations(dual_rep(rep), tol=1e-10).deviation,
            )
    _verdict(1, worst < 1e-10, f"relation residual {worst:.2e} < 1e-10 (n=1..4, 10 samples)")


def test_criterion_2_bulk_uniqueness():
    worst_resid = 0.0
    all_unique = True
    for n in (1, 2, 3):
        rng = np.random.default_rng(2000 + n)
        for _ in range(10):
            q, x = generic_point(rng)
            _, y = generic_point(rng)
            sol = solve_bulk(vector_rep(n, q, x), vector_rep(n, q, y))
            all_unique &= sol.dimension == 1
            worst_resid = max(worst_resid, sol.residual)
    _verdict(
        2,
        all_unique and worst_resid < 1e-10,
        f"bulk dimension 1 with residual {worst_resid:.2e} < 1e-10 (n=1..3, 10 samples)",
    )


def test_criterion_3_yang_baxter():
    worst = 0.0
    for n in (1, 2):
        xa, xb, xc = (np.exp(t) for t in THETAS)
        ra, rb, rc = (vector_rep(n, Q_REF, v) for v in (xa, xb, xc))
        report = check_ybe(
            solve_bulk(ra, rb).normalized,
            solve_bulk(ra, rc).normalized,
            solve_bulk(rb, rc).normalized,
            (n + 1,) * 3,
            tol=1e-8,
        )
        worst = max(worst, report.deviation)
    _verdict(3, worst < 1e-8, f"YBE deviation {worst:.2e} < 1e-8 (n=1,2 at {THETAS})")


def test_criterion_4_paper_boundary_closed_form():
    # analytic anchors at n = 1, (q, x) = (2, 3)
    k_pp = solve_paper_k(1, 2.0, 3.0, (1, 1)).normalized
    k_pm = solve_paper_k(1, 2.0, 3.0, (1, -1)).normalized
    anchors = (
        abs(k_pp[0, 1] / k_pp[0, 0] - 0.5625) < 1e-12
        and abs(k_pm[0, 1] / k_pm[0, 0] - 0.45) < 1e-12
    )
    # n = 2 runs first: the aggregate product rule must survive the nullspace
    # oracle there before being relied on at n = 3, 4
    worst = 0.0
    all_ok = anchors
    for n in (2, 3, 4):
        for signs in itertools.product((1, -1), repeat=n + 1):
            sol = solve_paper_k(n, Q_REF, np.exp(0.7), signs)
            if sol.dimension != 1:
                all_ok = False
                continue
            explicit = closed_form_k(n, Q_REF, np.exp(0.7), ClosedFormParams(signs))
            equal, _, dev = projective_compare(explicit, sol.normalized, 1e-8)
            all_ok &= equal
            worst = max(worst, dev)
    _verdict(
        4,
        all_ok,
        f"all sign patterns dimension 1, closed-form deviation {worst:.2e} < 1e-8, "
        "n=1 anchors 0.5625/0.45 exact",
    )


def test_criterion_5_degenerate_eps():
    identity_ok = True
    for n in (1, 2, 3, 4):
        sol = solve_paper_k(n, Q_REF, np.exp(0.7), np.zeros(n + 1))
        identity_ok &= sol.dimension == 1 and bool(
            np.allclose(sol.normalized, np.eye(n + 1), atol=1e-10)
        )
    gone = (
        solve_paper_k(2, Q_REF, np.exp(0.7), (2, 1, 1)).dimension == 0
        and solve_paper_k(3, Q_REF, np.exp(0.7), (1, 1, 0.5, 1)).dimension == 0
    )
    phase = np.exp(1j * np.pi / 3)
    phase_dim = solve_paper_k(2, Q_REF, np.exp(0.7), (phase,) * 3).dimension
    print(f"criterion 5 note: phase case eps_i = e^(i pi/3) measured dimension {phase_dim} "
          "(reported, not asserted)")
    _verdict(
        5,
        identity_ok and gone,
        "eps=0 gives K=identity at 1e-10 (n=1..4); off-modulus eps gives dimension 0",
    )


def _re_inputs(n, eps):
    objs = engine_point(n, Q_REF, THETAS, eps)
    assert objs is not None, f"expected dimension-1 point at n={n}, eps={eps}"
    return objs


def test_criterion_6_reflection_equation():
    worst = 0.0
    for n, points in ENGINE_POINTS.items():
        for eps in points:
            objs = _re_inputs(n, eps)
            report = check_reflection_equation(
                objs["k_mu"], objs["k_nu"], objs["s_mn"], objs["s_m_nb"],
                objs["s_n_mb"], objs["s_nb_mb"], tol=1e-8,
            )
            worst = max(worst, report.deviation)
    _verdict(
        6,
        worst < 1e-8,
        f"reflection equation deviation {worst:.2e} < 1e-8 over "
        f"{sum(map(len, ENGINE_POINTS.values()))} engine-convention points (n=1,2)",
    )


def test_criterion_7_coideal_property():
    worst = 0.0
    for n in (1, 2, 3, 4):
        rng = np.random.default_rng(7000 + n)
        for _ in range(5):
            q, x = generic_point(rng)
            _, y = generic_point(rng)
            eps = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            report = check_coideal_property(
                vector_rep(n, q, x), vector_rep(n, q, y), eps, tol=1e-12
            )
            worst = max(worst, report.deviation)
    _verdict(7, worst < 1e-12, f"coideal residual {worst:.2e} < 1e-12 (n=1..4, 5 samples)")


def test_criterion_8_sklyanin_and_b_commutation():
    worst = 0.0
    for n, points in ENGINE_POINTS.items():
        dim = n + 1
        lam_rep = vector_rep(n, Q_REF, np.exp(THETAS[2]))
        for eps in points:
            objs = _re_inputs(n, eps)
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
            worst = max(
                worst, check_b_commutation(b_nu, b_nub, objs["k_nu"], tol=1e-8).deviation
            )
            b1 = eval_b_matrix(
                objs["k_mu"],
                plain_r(solve_bulk(objs["mu"], lam_rep).normalized, dim, dim),
                opposite_r(
                    plain_r(solve_bulk(lam_rep, objs["mub"]).normalized, dim, dim), dim, dim
                ),
            )
            b2 = eval_b_matrix(
                objs["k_nu"],
                plain_r(solve_bulk(objs["nu"], lam_rep).normalized, dim, dim),
                opposite_r(
                    plain_r(solve_bulk(lam_rep, objs["nub"]).normalized, dim, dim), dim, dim
                ),
            )
            r_set = {
                "dims": (dim, dim, dim),
                "r_mu_nu": plain_r(objs["s_mn"], dim, dim),
                "r_mu_nubar": plain_r(objs["s_m_nb"], dim, dim),
                "prp_nubar_mubar": opposite_r(plain_r(objs["s_nb_mb"], dim, dim), dim, dim),
                "prp_nu_mubar": opposite_r(plain_r(objs["s_n_mb"], dim, dim), dim, dim),
            }
            worst = max(worst, check_sklyanin(b1, b2, r_set, tol=1e-8).deviation)
    _verdict(
        8,
        worst < 1e-8,
        f"Sklyanin exchange and common-scalar B-commutation deviation {worst:.2e} < 1e-8",
    )


def test_criterion_9_cli_determinism(tmp_path):
    args = [
        "kmatrix", "--n", "2", "--q", "0.8@0.3", "--x", "2.01+0i",
        "--eps", "1+0i,1+0i,1+0i", "--method", "paper",
    ]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli_main(args + ["--out", str(out1)]) == 0
    assert cli_main(args + ["--out", str(out2)]) == 0
    same_k = out1.read_bytes() == out2.read_bytes()

    scan_args = [
        "scan", "eps", "--n", "1", "--q", "0.8@0.3", "--x", "2.01+0i", "--grid", "0,1,-1",
    ]
    s1, s2 = tmp_path / "s1.json", tmp_path / "s2.json"
    assert cli_main(scan_args + ["--out", str(s1)]) == 0
    assert cli_main(scan_args + ["--out", str(s2)]) == 0
    same_scan = s1.read_bytes() == s2.read_bytes()
    _verdict(9, same_k and same_scan, "repeated CLI invocations produce byte-identical JSON")
