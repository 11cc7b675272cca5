"""Nonlinear consistency checks built out of solved intertwiners.

All identities here are expected to hold only projectively: each check
recovers a single scalar and reports the relative deviation after dividing
it out.  Per-channel normalizations of the inputs therefore never matter,
and multiplying any one input by a nonzero scalar cannot flip a verdict.

R-matrix conventions: a braiding S maps V_a x V_b -> V_b x V_a; the plain
R on V_a x V_b is flip . S, and the opposite R on V_b x V_a is the
flip-conjugation P R P of the plain one.
"""

from __future__ import annotations

import numpy as np

from .linalg import (
    as_matrix,
    embed_on_legs,
    flip_operator,
    kron,
    projective_compare,
    relative_defect,
)
from .reports import VerificationReport
from .reps import EvaluationRep, as_boundary_params, coideal_generators, coproduct_matrix


def plain_r(braiding, d_a: int, d_b: int) -> np.ndarray:
    """Plain R-matrix on V_a x V_b from the braiding V_a x V_b -> V_b x V_a."""
    braiding = as_matrix(braiding)
    if braiding.shape != (d_b * d_a, d_a * d_b):
        raise ValueError(f"braiding shape {braiding.shape} does not match dims ({d_a},{d_b})")
    return flip_operator(d_b, d_a) @ braiding


def opposite_r(r_plain, d_a: int, d_b: int) -> np.ndarray:
    """Opposite R on V_b x V_a: flip-conjugation P R P of plain R on V_a x V_b."""
    r_plain = as_matrix(r_plain)
    if r_plain.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"plain R shape {r_plain.shape} does not match dims ({d_a},{d_b})")
    return flip_operator(d_a, d_b) @ r_plain @ flip_operator(d_b, d_a)


def _projective_report(name, lhs, rhs, tol, context) -> VerificationReport:
    equal, lam, deviation = projective_compare(lhs, rhs, tol)
    return VerificationReport(
        name=name, deviation=deviation, lam=lam, tol=tol, passed=equal, context=context
    )


def check_ybe(s_ab, s_ac, s_bc, dims, tol: float = 1e-8, context=None) -> VerificationReport:
    """Yang-Baxter equation in braid form on three legs.

    LHS = (1 x S_ab)(S_ac x 1)(1 x S_bc) against
    RHS = (S_bc x 1)(1 x S_ac)(S_ab x 1), both V_a V_b V_c -> V_c V_b V_a.
    """
    d_a, d_b, d_c = (int(d) for d in dims)
    s_ab, s_ac, s_bc = as_matrix(s_ab), as_matrix(s_ac), as_matrix(s_bc)
    lhs = (
        embed_on_legs(s_ab, (1, 2), (d_c, d_a, d_b))
        @ embed_on_legs(s_ac, (0, 1), (d_a, d_c, d_b))
        @ embed_on_legs(s_bc, (1, 2), (d_a, d_b, d_c))
    )
    rhs = (
        embed_on_legs(s_bc, (0, 1), (d_b, d_c, d_a))
        @ embed_on_legs(s_ac, (1, 2), (d_b, d_a, d_c))
        @ embed_on_legs(s_ab, (0, 1), (d_a, d_b, d_c))
    )
    return _projective_report("yang-baxter", lhs, rhs, tol, dict(context or {}, dims=dims))


def check_reflection_equation(
    k_mu, k_nu, s_mn, s_m_nb, s_n_mb, s_nb_mb, tol: float = 1e-8, context=None
) -> VerificationReport:
    """Reflection equation, composed exactly as the two boundary factorizations.

    Path_left  = (1 x K_nu) S_{nu mubar} (1 x K_mu) S_{mu nu}
    Path_right = S_{nubar mubar} (1 x K_mu) S_{mu nubar} (1 x K_nu)
    as maps V_mu x V_nu -> V_mubar x V_nubar.  All six inputs must be solved
    in one consistent convention (same conjugate representation objects).
    """
    k_mu, k_nu = as_matrix(k_mu), as_matrix(k_nu)
    d_mu = k_mu.shape[1]
    d_mub = k_mu.shape[0]
    d_nu = k_nu.shape[1]
    d_nub = k_nu.shape[0]
    eye = np.eye
    left = (
        kron(eye(d_mub), k_nu)
        @ as_matrix(s_n_mb)
        @ kron(eye(d_nu), k_mu)
        @ as_matrix(s_mn)
    )
    right = (
        as_matrix(s_nb_mb)
        @ kron(eye(d_nub), k_mu)
        @ as_matrix(s_m_nb)
        @ kron(eye(d_mu), k_nu)
    )
    if left.shape != right.shape:
        raise ValueError(f"path shapes disagree: {left.shape} vs {right.shape}")
    return _projective_report("reflection-equation", left, right, tol, dict(context or {}))


def check_coideal_property(
    rep_a: EvaluationRep, rep_b: EvaluationRep, eps, tol: float = 1e-12
) -> VerificationReport:
    """Left-coideal identity Delta(Qhat_i) = (Q_i+Qbar_i) x 1 + q^{T_i} x Qhat_i.

    Both sides expand to the same sum of Kronecker products, so the residual
    sits at machine precision; the check guards the assembly, not the algebra.
    """
    params = as_boundary_params(eps, rep_a.n)
    hats_b = coideal_generators(rep_b, params).Qhat
    eye_b = np.eye(rep_b.dim, dtype=np.complex128)
    worst = 0.0
    for i in range(rep_a.nodes):
        lhs = (
            coproduct_matrix(rep_a, rep_b, "Q", i)
            + coproduct_matrix(rep_a, rep_b, "Qbar", i)
            + params[i] * coproduct_matrix(rep_a, rep_b, "qT", i)
        )
        rhs = kron(rep_a.Q[i] + rep_a.Qbar[i], eye_b) + kron(rep_a.D[i], hats_b[i])
        worst = max(worst, relative_defect(lhs, rhs))
    return VerificationReport(
        name="coideal-property",
        deviation=worst,
        lam=1.0,
        tol=tol,
        passed=worst <= tol,
        context={"n": rep_a.n, "q": rep_a.q, "x_left": rep_a.x, "x_right": rep_b.x,
                 "eps": params.eps},
    )


def eval_b_matrix(k_mu, r_in, r_op_out) -> np.ndarray:
    """Boundary transfer block B = R_op_out (K_mu x 1) R_in on V_mu x V_lambda.

    ``r_in`` is the plain R on V_mu x V_lambda, ``r_op_out`` the opposite R
    evaluated on V_mubar x V_lambda; the companion leg lambda is whatever
    finite representation the R's were evaluated in.
    """
    k_mu = as_matrix(k_mu)
    r_in = as_matrix(r_in)
    r_op_out = as_matrix(r_op_out)
    d_mub, d_mu = k_mu.shape
    if r_in.shape[0] != r_in.shape[1] or r_in.shape[0] % d_mu:
        raise ValueError(f"r_in shape {r_in.shape} incompatible with K columns {d_mu}")
    d_lam = r_in.shape[0] // d_mu
    if r_op_out.shape != (d_mub * d_lam, d_mub * d_lam):
        raise ValueError(f"r_op_out shape {r_op_out.shape} incompatible with K rows {d_mub}")
    return r_op_out @ np.kron(k_mu, np.eye(d_lam, dtype=np.complex128)) @ r_in


def _blocks(b: np.ndarray, d_rows: int, d_cols: int, d_lam: int):
    for alpha in range(d_rows):
        for beta in range(d_cols):
            yield b[alpha * d_lam:(alpha + 1) * d_lam, beta * d_lam:(beta + 1) * d_lam]


def check_b_commutation(
    b_with_nu, b_with_nubar, k_nu, tol: float = 1e-8, context=None
) -> VerificationReport:
    """One common scalar c with K_nu M_ab = c Mbar_ab K_nu over all blocks.

    The blocks M_ab (Mbar_ab) are the companion-leg matrices of B evaluated
    with lambda = nu (lambda = nubar).  Stacking all blocks before the
    projective comparison is what makes the scalar common: a per-block
    scalar would hold vacuously.
    """
    b_nu = as_matrix(b_with_nu)
    b_nubar = as_matrix(b_with_nubar)
    k_nu = as_matrix(k_nu)
    d_nub, d_nu = k_nu.shape
    if b_nu.shape[0] % d_nu or b_nu.shape[1] % d_nu:
        raise ValueError("b_with_nu block size does not divide its shape")
    d_rows = b_nu.shape[0] // d_nu
    d_cols = b_nu.shape[1] // d_nu
    if b_nubar.shape != (d_rows * d_nub, d_cols * d_nub):
        raise ValueError(
            f"b_with_nubar shape {b_nubar.shape} incompatible with blocks "
            f"({d_rows},{d_cols}) of size {d_nub}"
        )
    lhs = np.vstack([k_nu @ m for m in _blocks(b_nu, d_rows, d_cols, d_nu)])
    rhs = np.vstack([m @ k_nu for m in _blocks(b_nubar, d_rows, d_cols, d_nub)])
    return _projective_report("b-commutation", lhs, rhs, tol, dict(context or {}))


def check_sklyanin(b1, b2, r_set: dict, tol: float = 1e-8, context=None) -> VerificationReport:
    """Quadratic exchange relation of the boundary blocks, evaluated on three legs.

    Legs are (mu, nu, lambda); b1 acts on legs (0, 2), b2 on legs (1, 2).
    ``r_set`` supplies the leg-(0,1) factors: plain "r_mu_nu" and
    "r_mu_nubar", plus the flip-conjugated "prp_nubar_mubar" and
    "prp_nu_mubar".  The comparison is

      PRP_{nubar mubar} B1 R_{mu nubar} B2  =  B2 PRP_{nu mubar} B1 R_{mu nu}

    up to one scalar, both sides V_mu V_nu V_lam -> V_mubar V_nubar V_lam.
    """
    b1 = as_matrix(b1)
    b2 = as_matrix(b2)
    required = ("r_mu_nu", "r_mu_nubar", "prp_nubar_mubar", "prp_nu_mubar")
    missing = [key for key in required if key not in r_set]
    if missing:
        raise ValueError(f"r_set missing channels: {missing}")
    d_mu, d_nu, d_lam = (int(d) for d in r_set["dims"])
    legs = (d_mu, d_nu, d_lam)
    lhs = (
        embed_on_legs(r_set["prp_nubar_mubar"], (0, 1), legs)
        @ embed_on_legs(b1, (0, 2), legs)
        @ embed_on_legs(r_set["r_mu_nubar"], (0, 1), legs)
        @ embed_on_legs(b2, (1, 2), legs)
    )
    rhs = (
        embed_on_legs(b2, (1, 2), legs)
        @ embed_on_legs(r_set["prp_nu_mubar"], (0, 1), legs)
        @ embed_on_legs(b1, (0, 2), legs)
        @ embed_on_legs(r_set["r_mu_nu"], (0, 1), legs)
    )
    return _projective_report("sklyanin-exchange", lhs, rhs, tol, dict(context or {}, dims=legs))
