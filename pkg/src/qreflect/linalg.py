"""Dense complex linear algebra helpers.

Everything here operates on 2-d ``numpy`` arrays of ``complex128`` in
row-major (C) order.  The row-major convention matters: ``vec`` of a
matrix is its flattened rows, so ``vec(A @ X @ B) = (A kron B.T) vec(X)``,
which is how the intertwining systems are stacked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_REL_TOL = 1e-9

# Tie tolerance for picking the max-modulus entry in normalize_solution.
_TIE_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(as_matrix(a), as_matrix(b))


def flip_operator(d_a: int, d_b: int) -> np.ndarray:
    """Permutation matrix P with P(u kron v) = v kron u.

    Here u runs over C^d_a and v over C^d_b, so P maps the tensor slot
    order (a, b) to (b, a).  Shape is (d_a*d_b, d_a*d_b) and
    flip_operator(d_a, d_b) @ flip_operator(d_b, d_a) is the identity.
    """
    if d_a < 1 or d_b < 1:
        raise ValueError("leg dimensions must be >= 1")
    p = np.zeros((d_a * d_b, d_a * d_b), dtype=np.complex128)
    for i in range(d_a):
        for j in range(d_b):
            p[j * d_a + i, i * d_b + j] = 1.0
    return p


def _leg_permutation(new_order, leg_dims) -> np.ndarray:
    """Matrix sending basis vector e_(i_0,...,i_k) to e_(i_new_order)."""
    dims = list(leg_dims)
    total = int(np.prod(dims))
    perm = np.zeros((total, total), dtype=np.complex128)
    strides_old = np.array([int(np.prod(dims[k + 1:])) for k in range(len(dims))])
    new_dims = [dims[k] for k in new_order]
    strides_new = np.array([int(np.prod(new_dims[k + 1:])) for k in range(len(new_dims))])
    for flat in range(total):
        rem = flat
        idx = []
        for s in strides_old:
            idx.append(rem // s)
            rem %= s
        new_flat = sum(int(idx[k]) * int(strides_new[pos]) for pos, k in enumerate(new_order))
        perm[new_flat, flat] = 1.0
    return perm


def embed_on_legs(op, legs, leg_dims) -> np.ndarray:
    """Act with a square operator on selected tensor legs, identity elsewhere.

    ``legs`` are 0-based, strictly increasing positions into ``leg_dims``.
    Non-adjacent legs are handled by conjugating with the permutation that
    brings the selected legs to the front (in their given order).
    """
    op = as_matrix(op)
    legs = list(legs)
    dims = [int(d) for d in leg_dims]
    if any(l < 0 or l >= len(dims) for l in legs):
        raise ValueError(f"legs {legs} out of range for {len(dims)} legs")
    if sorted(legs) != legs or len(set(legs)) != len(legs):
        raise ValueError("legs must be strictly increasing")
    sel = int(np.prod([dims[l] for l in legs]))
    if op.shape != (sel, sel):
        raise ValueError(
            f"operator shape {op.shape} does not match selected leg dims (total {sel})"
        )
    rest = [k for k in range(len(dims)) if k not in legs]
    perm = _leg_permutation(legs + rest, dims)
    d_rest = int(np.prod([dims[k] for k in rest])) if rest else 1
    big = np.kron(op, np.eye(d_rest, dtype=np.complex128))
    return perm.conj().T @ big @ perm


@dataclass
class NullspaceResult:
    """Right nullspace of a matrix, from an SVD rank decision."""

    dimension: int
    basis: list = field(default_factory=list)  # vectors reshaped to the unknown's shape
    max_residual: float = 0.0
    tolerance_used: float = DEFAULT_REL_TOL
    sigma_max: float = 0.0
    degenerate: bool = False  # all-zero input matrix


def nullspace(m, rel_tol: float = DEFAULT_REL_TOL, unknown_shape=None) -> NullspaceResult:
    """Orthonormal basis of the right nullspace of ``m``.

    A singular value counts as zero iff it is < rel_tol * sigma_max.  Basis
    vectors are reshaped (row-major) to ``unknown_shape`` when given.  An
    all-zero matrix yields the full space with the ``degenerate`` flag set.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    m = as_matrix(m)
    rows, cols = m.shape
    if rows == 0:
        raise ValueError("matrix must have at least one row")
    shape = (cols,) if unknown_shape is None else tuple(unknown_shape)
    if int(np.prod(shape)) != cols:
        raise ValueError(f"unknown_shape {shape} incompatible with {cols} columns")

    _, s, vh = np.linalg.svd(m, full_matrices=True)
    sigma_max = float(s[0]) if s.size else 0.0
    if sigma_max == 0.0:
        basis = [np.eye(cols, dtype=np.complex128)[:, k].reshape(shape) for k in range(cols)]
        return NullspaceResult(cols, basis, 0.0, rel_tol, 0.0, degenerate=True)

    rank = int(np.sum(s >= rel_tol * sigma_max))
    vectors = [vh[k].conj() for k in range(rank, cols)]
    residual = max((float(np.linalg.norm(m @ v)) for v in vectors), default=0.0)
    basis = [v.reshape(shape) for v in vectors]
    return NullspaceResult(cols - rank, basis, residual, rel_tol, sigma_max)


def projective_compare(a, b, tol: float):
    """Compare two matrices up to one overall scalar.

    Returns (equal, lam, deviation) where lam = <vec b, vec a> / |vec b|^2
    and deviation = |a - lam*b|_F / |a|_F.  Comparing zero against nonzero
    reports not-equal with deviation 1; two zero inputs are an error.  The
    deviation is measured relative to the left argument.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 and nb == 0.0:
        raise ValueError("degenerate comparison: both matrices are zero")
    if na == 0.0 or nb == 0.0:
        return False, 0j, 1.0
    lam = complex(np.vdot(b, a) / nb**2)
    deviation = float(np.linalg.norm(a - lam * b)) / na
    return deviation <= tol, lam, deviation


def normalize_solution(v) -> np.ndarray:
    """Divide by the entry of maximum modulus (first index on near-ties).

    The chosen entry becomes exactly 1+0i, which makes nullspace output
    independent of the arbitrary SVD phase.  Idempotent.
    """
    v = as_matrix(np.atleast_2d(v))
    flat = v.ravel()
    mods = np.abs(flat)
    top = float(mods.max())
    if top == 0.0:
        raise ValueError("cannot normalize the zero matrix")
    pivot_index = int(np.nonzero(mods >= top - _TIE_TOL)[0][0])
    out = flat / flat[pivot_index]
    out[pivot_index] = 1.0
    return out.reshape(v.shape)


def relative_defect(lhs, rhs) -> float:
    """Frobenius defect |lhs-rhs| scaled by max(1, |lhs|, |rhs|)."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    scale = max(1.0, float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs)))
    return float(np.linalg.norm(lhs - rhs)) / scale
