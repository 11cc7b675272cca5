"""Intertwining equations posed as homogeneous linear systems.

Bulk S-matrices, boundary K-matrices, and representation equivalences are
all nullspace problems: stack one vectorized Sylvester block
X -> X @ M_in - M_out @ X per generator and feed the stack to the SVD.
Blocks are stacked kind-major (Q, Qbar, qT), node index minor; q^{-T_i}
rows are implied by invertibility and never stacked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    DEFAULT_REL_TOL,
    NullspaceResult,
    normalize_solution,
    nullspace,
)
from .reps import (
    GENERATOR_ORDER,
    EvaluationRep,
    as_boundary_params,
    coideal_generators,
    coproduct_matrix,
    dual_rep,
    vector_rep,
)


@dataclass
class IntertwinerSolution:
    """Nullspace of one intertwining problem.

    ``normalized`` is the canonically scaled solution, present only when the
    space is one-dimensional; ``residual`` is its worst relative defect over
    the defining equations.
    """

    kind: str
    context: dict
    nullspace: NullspaceResult
    normalized: np.ndarray | None = None
    residual: float = float("nan")
    flags: tuple = ()

    @property
    def dimension(self) -> int:
        return self.nullspace.dimension


def _sylvester_block(m_in: np.ndarray, m_out: np.ndarray) -> np.ndarray:
    """Matrix of X -> X @ m_in - m_out @ X acting on vec(X), row-major."""
    rows_x = m_out.shape[0]
    cols_x = m_in.shape[0]
    eye_r = np.eye(rows_x, dtype=np.complex128)
    eye_c = np.eye(cols_x, dtype=np.complex128)
    return np.kron(eye_r, m_in.T) - np.kron(m_out, eye_c)


def _solve_stacked(pairs, shape, kind, context, rel_tol, flags=()):
    """Common tail: stack Sylvester blocks, take the nullspace, normalize."""
    system = np.vstack([_sylvester_block(m_in, m_out) for m_in, m_out in pairs])
    ns = nullspace(system, rel_tol=rel_tol, unknown_shape=shape)
    solution = IntertwinerSolution(kind=kind, context=context, nullspace=ns, flags=tuple(flags))
    if ns.dimension == 1:
        candidate = normalize_solution(ns.basis[0])
        solution.normalized = candidate
        solution.residual = intertwining_residual(candidate, pairs)
    return solution


def intertwining_residual(x: np.ndarray, pairs) -> float:
    """Worst relative defect of X @ m_in - m_out @ X over the given pairs."""
    norm_x = float(np.linalg.norm(x))
    worst = 0.0
    for m_in, m_out in pairs:
        scale = norm_x * max(1.0, float(np.linalg.norm(m_in)), float(np.linalg.norm(m_out)))
        worst = max(worst, float(np.linalg.norm(x @ m_in - m_out @ x)) / scale)
    return worst


def _bulk_pairs(rep_a: EvaluationRep, rep_b: EvaluationRep):
    pairs = []
    for kind in GENERATOR_ORDER:
        for i in range(rep_a.nodes):
            pairs.append(
                (
                    coproduct_matrix(rep_a, rep_b, kind, i),
                    coproduct_matrix(rep_b, rep_a, kind, i),
                )
            )
    return pairs


def solve_bulk(
    rep_a: EvaluationRep, rep_b: EvaluationRep, rel_tol: float = DEFAULT_REL_TOL
) -> IntertwinerSolution:
    """Braiding intertwiner S : V_a x V_b -> V_b x V_a.

    Solves S (pi_a x pi_b)(Delta g) = (pi_b x pi_a)(Delta g) S over all
    generators.  Equal spectral parameters are permitted but flagged, since
    uniqueness claims hold only at generic points.
    """
    if not rep_a.same_algebra(rep_b):
        raise ValueError("bulk channels require matching (n, q)")
    flags = []
    if np.isclose(rep_a.x, rep_b.x) and rep_a.is_dual == rep_b.is_dual:
        flags.append("equal-rapidity")
    context = {
        "n": rep_a.n,
        "q": rep_a.q,
        "left": rep_a.label(),
        "right": rep_b.label(),
    }
    shape = (rep_b.dim * rep_a.dim, rep_a.dim * rep_b.dim)
    return _solve_stacked(_bulk_pairs(rep_a, rep_b), shape, "bulk", context, rel_tol, flags)


def solve_boundary(
    rep: EvaluationRep,
    dual: EvaluationRep,
    eps,
    rel_tol: float = DEFAULT_REL_TOL,
) -> IntertwinerSolution:
    """Reflection intertwiner K : V -> Vbar for the boundary algebra.

    Solves K pi(Qhat_i) = pibar(Qhat_i) K for the coideal generators
    Qhat_i = Q_i + Qbar_i + eps_i q^{T_i}, with pibar acting on whatever
    conjugate representation the caller supplies.  The solvable locus in
    (x, dual parameter, eps) is an empirical matter; see reflection_dual
    for the convention under which solutions exist.
    """
    if not rep.same_algebra(dual):
        raise ValueError("boundary system requires matching (n, q)")
    if rep.dim != dual.dim:
        raise ValueError("boundary system requires equal dimensions")
    params = as_boundary_params(eps, rep.n)
    hats_in = coideal_generators(rep, params).Qhat
    hats_out = coideal_generators(dual, params).Qhat
    pairs = list(zip(hats_in, hats_out))
    context = {
        "n": rep.n,
        "q": rep.q,
        "x": rep.x,
        "dual": dual.label(),
        "eps": params.eps,
    }
    return _solve_stacked(pairs, (dual.dim, rep.dim), "boundary", context, rel_tol)


def solve_equivalence(
    rep_a: EvaluationRep, rep_b: EvaluationRep, rel_tol: float = DEFAULT_REL_TOL
) -> IntertwinerSolution:
    """Module maps M with M pi_a(g) = pi_b(g) M over all generators."""
    if not rep_a.same_algebra(rep_b):
        raise ValueError("equivalence requires matching (n, q)")
    if rep_a.dim != rep_b.dim:
        raise ValueError("equivalence requires equal dimensions")
    pairs = []
    for kind in GENERATOR_ORDER:
        for i in range(rep_a.nodes):
            pairs.append((rep_a.generator(kind, i), rep_b.generator(kind, i)))
    context = {"n": rep_a.n, "q": rep_a.q, "left": rep_a.label(), "right": rep_b.label()}
    return _solve_stacked(pairs, (rep_b.dim, rep_a.dim), "equivalence", context, rel_tol)


def reflection_dual(rep: EvaluationRep) -> EvaluationRep:
    """Conjugate representation a reflection can land in (engine convention).

    The antipode dual built at spectral parameter 1/x (the naive
    theta -> -theta reading) admits no boundary intertwiners at generic
    points; the dual built at -q/x does.  This helper returns the latter:
    the antipode dual of the vector representation at -q/x.
    """
    if rep.is_dual:
        raise ValueError("reflection_dual expects a vector representation")
    return dual_rep(vector_rep(rep.n, rep.q, -rep.q / rep.x))


@dataclass
class ScanResult:
    """Nullspace dimensions recorded over a parameter grid."""

    grid: list
    dims: list
    meta: dict = field(default_factory=dict)


def dimension_scan(kind: str, fixed: dict, grid, rel_tol: float = DEFAULT_REL_TOL) -> ScanResult:
    """Record intertwiner nullspace dimensions over a grid.

    kind="bulk": fixed needs n, q, x_left; grid entries are right spectral
    parameters.  kind="boundary": fixed needs n, q, x and a ``method`` of
    "paper" (the explicit printed equation system) or "generic" (the
    antipode-dual engine system; optional ``dual_x`` overrides the conjugate
    parameter, default -q/x).  Grid entries are eps tuples, or spectral
    parameters when fixed carries an ``eps`` entry instead.  Degenerate
    points are recorded, never raised.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("grid must be nonempty")
    n = int(fixed["n"])
    q = complex(fixed["q"])
    dims = []
    if kind == "bulk":
        left = vector_rep(n, q, complex(fixed["x_left"]))
        for point in grid:
            dims.append(solve_bulk(left, vector_rep(n, q, complex(point)), rel_tol).dimension)
    elif kind == "boundary":
        method = fixed.get("method", "paper")
        for point in grid:
            if isinstance(point, (tuple, list)):
                eps, x = tuple(point), complex(fixed["x"])
            else:
                eps, x = tuple(fixed["eps"]), complex(point)
            dims.append(_boundary_dimension(n, q, x, eps, method, fixed, rel_tol))
    else:
        raise ValueError(f"unknown scan kind {kind!r}")
    meta = {"kind": kind, "fixed": dict(fixed), "rel_tol": rel_tol}
    return ScanResult(grid=grid, dims=dims, meta=meta)


def _boundary_dimension(n, q, x, eps, method, fixed, rel_tol) -> int:
    if method == "paper":
        from .boundary import solve_paper_k  # local import, boundary builds on this module

        return solve_paper_k(n, q, x, eps, rel_tol).dimension
    if method == "generic":
        rep = vector_rep(n, q, x)
        dual_x = fixed.get("dual_x")
        if dual_x is None:
            dual = reflection_dual(rep)
        else:
            dual = dual_rep(vector_rep(n, q, complex(dual_x)))
        return solve_boundary(rep, dual, eps, rel_tol).dimension
    raise ValueError(f"unknown boundary method {method!r}")
