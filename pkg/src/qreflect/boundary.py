"""The explicit vector-soliton boundary system for type A_n^(1).

Four families of linear conditions constrain the N x N reflection matrix K
(entries K^a_b, N = n+1, node indices cyclic mod N):

  1.  eps_i (q^{-1} - q) K^i_i + x K^i_{i+1} - x^{-1} K^{i+1}_i = 0
  2.  K^{i+1}_{i+1} - K^i_i = 0
  3.  eps_i q     K^i_j + x^{-1} K^{i+1}_j = 0      for j not in {i, i+1}
  4.  eps_i q^{-1} K^j_i + x      K^j_{i+1} = 0     for j not in {i, i+1}

Families 3 and 4 are empty for n = 1.  When every eps_i is +-1 the system
has a one-dimensional solution space whose representative is given in
closed form by ``closed_form_k``; eps = 0 forces K proportional to the
identity; other moduli leave no solution.  These claims are exercised, not
assumed, by the test suite.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_REL_TOL,
    as_matrix,
    normalize_solution,
    nullspace,
    projective_compare,
)
from .intertwiners import IntertwinerSolution
from .reps import BoundaryParams, as_boundary_params


@dataclass
class PaperBoundarySystem:
    """Stacked coefficient rows acting on vec(K) in row-major entry order."""

    n: int
    q: complex
    x: complex
    eps: BoundaryParams
    rows: np.ndarray

    @property
    def dim(self) -> int:
        return self.n + 1


def paper_boundary_system(n: int, q: complex, x: complex, eps) -> PaperBoundarySystem:
    """Emit the four equation families, one coefficient row per instance.

    Row order is family-major: family 1 for i = 0..n, then family 2, then
    families 3 and 4 with rows ordered by (i, j).  Total row count is
    (n+1)(2N-2).
    """
    q = complex(q)
    x = complex(x)
    if q == 0 or x == 0:
        raise ValueError("q and x must be nonzero")
    params = as_boundary_params(eps, n)
    dim = n + 1

    def entry(a: int, b: int) -> int:
        return (a % dim) * dim + (b % dim)

    rows = []

    def add_row(coeffs):
        row = np.zeros(dim * dim, dtype=np.complex128)
        for index, value in coeffs:
            row[index] += value
        rows.append(row)

    for i in range(dim):
        add_row(
            [
                (entry(i, i), params[i] * (1.0 / q - q)),
                (entry(i, i + 1), x),
                (entry(i + 1, i), -1.0 / x),
            ]
        )
    for i in range(dim):
        add_row([(entry(i + 1, i + 1), 1.0), (entry(i, i), -1.0)])
    for i in range(dim):
        for j in range(dim):
            if j in (i, (i + 1) % dim):
                continue
            add_row([(entry(i, j), params[i] * q), (entry(i + 1, j), 1.0 / x)])
    for i in range(dim):
        for j in range(dim):
            if j in (i, (i + 1) % dim):
                continue
            add_row([(entry(j, i), params[i] / q), (entry(j, i + 1), x)])

    stacked = np.array(rows, dtype=np.complex128)
    expected = (n + 1) * (2 * dim - 2)
    assert stacked.shape == (expected, dim * dim)
    return PaperBoundarySystem(n=n, q=q, x=x, eps=params, rows=stacked)


def solve_paper_k(
    n: int, q: complex, x: complex, eps, rel_tol: float = DEFAULT_REL_TOL
) -> IntertwinerSolution:
    """Nullspace of the explicit family system, canonically normalized."""
    system = paper_boundary_system(n, q, x, eps)
    dim = system.dim
    ns = nullspace(system.rows, rel_tol=rel_tol, unknown_shape=(dim, dim))
    solution = IntertwinerSolution(
        kind="paper-boundary",
        context={"n": n, "q": system.q, "x": system.x, "eps": system.eps.eps},
        nullspace=ns,
    )
    if ns.dimension == 1:
        k = normalize_solution(ns.basis[0])
        solution.normalized = k
        scale = float(np.linalg.norm(k)) * max(1.0, float(np.linalg.norm(system.rows)))
        solution.residual = float(np.linalg.norm(system.rows @ k.ravel())) / scale
    return solution


@dataclass
class ClosedFormParams:
    """Inputs of the closed-form reflection matrix.

    ``eps_aggregate`` defaults to the product of all eps_i (the rule the
    n = 1 elimination fixes and the n = 2 nullspace confirms).  ``branch``
    selects the square root of -q x used for half-integer powers; flipping
    it changes the matrix only by an overall sign.
    """

    eps: BoundaryParams
    eps_aggregate: complex | None = None
    k_theta: complex = 1.0
    branch: int = +1

    def __init__(self, eps, eps_aggregate=None, k_theta=1.0, branch=+1):
        params = eps if isinstance(eps, BoundaryParams) else BoundaryParams(eps)
        bad = [e for e in params if abs(abs(e) - 1.0) > 1e-12]
        if bad:
            raise ValueError(f"closed form requires |eps_i| = 1, got {bad}")
        if branch not in (+1, -1):
            raise ValueError("branch must be +1 or -1")
        self.eps = params
        self.eps_aggregate = None if eps_aggregate is None else complex(eps_aggregate)
        self.k_theta = complex(k_theta)
        self.branch = branch

    def aggregate(self) -> complex:
        if self.eps_aggregate is not None:
            return self.eps_aggregate
        product = 1.0 + 0j
        for e in self.eps:
            product *= e
        return product


def closed_form_k(n: int, q: complex, x: complex, params: ClosedFormParams) -> np.ndarray:
    """Evaluate the closed-form reflection matrix at one spectral point.

    With w a square root of -q x and W = w^{n+1}:
      K^i_i = (q^{-1} W - eps_agg q W^{-1}) k / (q^{-1} - q)
      K^i_j = eps_i ... eps_{j-1}           w^{2(i-j)+n+1} k   (j > i)
      K^j_i = eps_i ... eps_{j-1} eps_agg   w^{2(j-i)-n-1} k   (j > i)
    """
    q = complex(q)
    x = complex(x)
    if q == 0 or x == 0:
        raise ValueError("q and x must be nonzero")
    if abs(q**2 - 1.0) < 1e-12:
        raise ValueError("closed form is singular at q^2 = 1")
    eps = as_boundary_params(params.eps, n)
    agg = params.aggregate()
    k_scale = params.k_theta
    w = params.branch * cmath.sqrt(-q * x)
    cap_w = w ** (n + 1)
    dim = n + 1

    out = np.zeros((dim, dim), dtype=np.complex128)
    diag = (cap_w / q - agg * q / cap_w) * k_scale / (1.0 / q - q)
    for i in range(dim):
        out[i, i] = diag
    for i in range(dim):
        for j in range(i + 1, dim):
            chain = 1.0 + 0j
            for l in range(i, j):
                chain *= eps[l]
            out[i, j] = chain * w ** (2 * (i - j) + n + 1) * k_scale
            out[j, i] = chain * agg * w ** (2 * (j - i) - n - 1) * k_scale
    return out


@dataclass
class GaugeReport:
    """Outcome of comparing two reflection-matrix conventions.

    ``constant`` says whether C(theta) = normalize(K_generic K_paper^{-1})
    is the same matrix (projectively) at every sampled rapidity; ``gauge``
    is that matrix when it is.
    """

    constant: bool
    gauge: np.ndarray | None
    max_deviation: float
    samples: list
    tol: float


def reconcile_gauge(k_paper_seq, k_generic_seq, sample_thetas, tol: float = 1e-6) -> GaugeReport:
    """Measure whether two K conventions differ by a rapidity-independent gauge.

    Both sequences must hold the (invertible) dimension-1 solutions at the
    same sampled rapidities, in order.
    """
    thetas = list(sample_thetas)
    k_paper_seq = [as_matrix(k) for k in k_paper_seq]
    k_generic_seq = [as_matrix(k) for k in k_generic_seq]
    if not (len(thetas) == len(k_paper_seq) == len(k_generic_seq)):
        raise ValueError("need one K per convention per sampled rapidity")
    if not thetas:
        raise ValueError("need at least one sample")
    gauges = []
    for k_p, k_g in zip(k_paper_seq, k_generic_seq):
        if abs(np.linalg.det(k_p)) < 1e-300:
            raise ValueError("paper-convention K is singular at a sample")
        gauges.append(normalize_solution(k_g @ np.linalg.inv(k_p)))
    worst = 0.0
    for c in gauges[1:]:
        _, _, deviation = projective_compare(c, gauges[0], tol)
        worst = max(worst, deviation)
    constant = worst <= tol
    return GaugeReport(
        constant=constant,
        gauge=gauges[0] if constant else None,
        max_deviation=worst,
        samples=[{"theta": t, "gauge": g} for t, g in zip(thetas, gauges)],
        tol=tol,
    )
