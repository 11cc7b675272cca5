"""Evaluation representations of the type-A affine quantum algebra.

The algebra is generated by raising/lowering charges Q_i, Qbar_i and the
group-like Cartan elements q^{T_i}, i = 0..n, with all node indices cyclic
mod N = n+1 (the affine node participates on equal footing).  Only the
group-like q^{+-T_i} are ever represented; T_i itself never appears.

A representation is stored as the four lists of generator matrices
(Q, Qbar, D = image of q^{T_i}, Dinv) together with the deformation
parameter q and the spectral parameter x = e^theta.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass, field

import numpy as np

from .linalg import kron, relative_defect
from .reports import VerificationReport


def cartan_inner(n: int, i: int, j: int) -> int:
    """Inner product alpha_i . alpha_j of simple roots of affine type A_n.

    2 on the diagonal, -1 for cyclically adjacent nodes (n >= 2), and -2
    off-diagonal for n = 1 where the two roots are opposite.  Rows sum to
    zero.
    """
    if n < 1:
        raise ValueError("rank index n must be >= 1")
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"node indices ({i},{j}) out of range 0..{n}")
    if i == j:
        return 2
    if n == 1:
        return -2
    d = (i - j) % (n + 1)
    return -1 if d in (1, n) else 0


def cartan_matrix(n: int) -> np.ndarray:
    return np.array([[cartan_inner(n, i, j) for j in range(n + 1)] for i in range(n + 1)])


def q_from_hbar(hbar: float) -> complex:
    """Deformation parameter as a function of the effective Planck constant."""
    if hbar == 0:
        raise ValueError("hbar must be nonzero")
    return cmath.exp(2j * cmath.pi * (1.0 - hbar) / hbar)


def _elementary(dim: int, row: int, col: int) -> np.ndarray:
    e = np.zeros((dim, dim), dtype=np.complex128)
    e[row, col] = 1.0
    return e


@dataclass
class EvaluationRep:
    """Generator matrices of one evaluation representation.

    ``x`` always records the spectral parameter of the underlying vector
    representation; ``is_dual`` marks whether the matrices have been passed
    through the antipode-transpose construction.
    """

    n: int
    q: complex
    x: complex
    is_dual: bool
    Q: list = field(repr=False, default_factory=list)
    Qbar: list = field(repr=False, default_factory=list)
    D: list = field(repr=False, default_factory=list)
    Dinv: list = field(repr=False, default_factory=list)

    @property
    def nodes(self) -> int:
        """Number of generator triples (node indices 0..n)."""
        return self.n + 1

    @property
    def dim(self) -> int:
        """Dimension of the carrier space (read off the matrices)."""
        return self.Q[0].shape[0] if self.Q else self.n + 1

    def generator(self, kind: str, i: int) -> np.ndarray:
        table = {"Q": self.Q, "Qbar": self.Qbar, "qT": self.D, "qTinv": self.Dinv}
        if kind not in table:
            raise ValueError(f"unknown generator kind {kind!r}")
        return table[kind][i]

    def same_algebra(self, other: "EvaluationRep") -> bool:
        return self.n == other.n and np.isclose(self.q, other.q)

    def label(self) -> str:
        flavor = "dual" if self.is_dual else "vector"
        return f"{flavor}(n={self.n}, x={self.x:.6g})"


def vector_rep(n: int, q: complex, x: complex) -> EvaluationRep:
    """The N = n+1 dimensional vector evaluation representation.

    Q_i = x e^{i+1}_i, Qbar_i = x^{-1} e^i_{i+1}, and q^{T_i} acts
    diagonally with q^{-1} in slot i and q in slot i+1 (indices mod N).
    """
    if n < 1:
        raise ValueError("rank index n must be >= 1")
    q = complex(q)
    x = complex(x)
    if q == 0 or x == 0:
        raise ValueError("q and x must be nonzero")
    _warn_if_low_root_of_unity(q)
    dim = n + 1
    Q, Qbar, D, Dinv = [], [], [], []
    for i in range(dim):
        up = (i + 1) % dim
        Q.append(x * _elementary(dim, up, i))
        Qbar.append((1.0 / x) * _elementary(dim, i, up))
        d = np.ones(dim, dtype=np.complex128)
        d[i] = 1.0 / q
        d[up] = q
        D.append(np.diag(d))
        Dinv.append(np.diag(1.0 / d))
    return EvaluationRep(n=n, q=q, x=x, is_dual=False, Q=Q, Qbar=Qbar, D=D, Dinv=Dinv)


def _warn_if_low_root_of_unity(q: complex, max_order: int = 6) -> None:
    for k in range(1, max_order + 1):
        if abs(q**k - 1.0) < 1e-9:
            warnings.warn(
                f"q is (close to) a root of unity of order {k}; "
                "generic-parameter claims may degenerate",
                stacklevel=3,
            )
            return


def dual_rep(rep: EvaluationRep, negate_rapidity: bool = False) -> EvaluationRep:
    """Antipode-transpose dual of a representation.

    The antipode acts as S(Q_i) = -q^{-T_i} Q_i, S(Qbar_i) = -q^{-T_i} Qbar_i,
    S(q^{T_i}) = q^{-T_i}, and the dual matrices are transposes of the
    antipode images.  With ``negate_rapidity`` the input is first rebuilt at
    spectral parameter 1/x (theta -> -theta), which requires a vector rep.
    """
    if negate_rapidity:
        if rep.is_dual:
            raise ValueError("negate_rapidity requires a vector representation")
        rep = vector_rep(rep.n, rep.q, 1.0 / rep.x)
    Q = [-(dinv @ qi).T for dinv, qi in zip(rep.Dinv, rep.Q)]
    Qbar = [-(dinv @ qb).T for dinv, qb in zip(rep.Dinv, rep.Qbar)]
    D = [dinv.T for dinv in rep.Dinv]
    Dinv = [d.T for d in rep.D]
    return EvaluationRep(
        n=rep.n, q=rep.q, x=rep.x, is_dual=not rep.is_dual, Q=Q, Qbar=Qbar, D=D, Dinv=Dinv
    )


@dataclass
class BoundaryParams:
    """Boundary parameter vector eps_0..eps_n (complex)."""

    eps: tuple

    def __init__(self, eps):
        object.__setattr__(self, "eps", tuple(complex(e) for e in eps))

    def __len__(self) -> int:
        return len(self.eps)

    def __getitem__(self, i: int) -> complex:
        return self.eps[i]

    def __iter__(self):
        return iter(self.eps)


def as_boundary_params(eps, n: int) -> BoundaryParams:
    params = eps if isinstance(eps, BoundaryParams) else BoundaryParams(eps)
    if len(params) != n + 1:
        raise ValueError(f"expected {n + 1} boundary parameters, got {len(params)}")
    return params


@dataclass
class CoidealGenerators:
    """Matrices Qhat_i = Q_i + Qbar_i + eps_i q^{T_i} of the boundary algebra."""

    Qhat: list
    params: BoundaryParams
    rep: EvaluationRep


def coideal_generators(rep: EvaluationRep, eps) -> CoidealGenerators:
    params = as_boundary_params(eps, rep.n)
    qhat = [
        rep.Q[i] + rep.Qbar[i] + params[i] * rep.D[i]
        for i in range(rep.nodes)
    ]
    return CoidealGenerators(Qhat=qhat, params=params, rep=rep)


def coproduct_matrix(rep_a: EvaluationRep, rep_b: EvaluationRep, kind: str, i: int) -> np.ndarray:
    """Image of the coproduct of one generator on the tensor product.

    Delta(Q_i) -> Q_i x 1 + q^{T_i} x Q_i (same for Qbar_i), and the
    group-like Delta(q^{T_i}) -> q^{T_i} x q^{T_i}.
    """
    if not rep_a.same_algebra(rep_b):
        raise ValueError("coproduct requires matching (n, q) on both factors")
    id_b = np.eye(rep_b.dim, dtype=np.complex128)
    if kind in ("Q", "Qbar"):
        return kron(rep_a.generator(kind, i), id_b) + kron(rep_a.D[i], rep_b.generator(kind, i))
    if kind == "qT":
        return kron(rep_a.D[i], rep_b.D[i])
    if kind == "qTinv":
        return kron(rep_a.Dinv[i], rep_b.Dinv[i])
    raise ValueError(f"unknown generator kind {kind!r}")


#: Stacking order of generator kinds for intertwining systems (kind-major,
#: node index minor).  Fixed so residual reports are reproducible.
GENERATOR_ORDER = ("Q", "Qbar", "qT")


def check_relations(rep: EvaluationRep, tol: float = 1e-10) -> VerificationReport:
    """Verify the defining algebra relations in a representation.

    For all i, j:
      (a) D_i Q_j D_i^{-1} = q^{alpha_i.alpha_j} Q_j
      (b) D_i Qbar_j D_i^{-1} = q^{-alpha_i.alpha_j} Qbar_j
      (c) Q_i Qbar_j - q^{-alpha_i.alpha_j} Qbar_j Q_i
              = delta_ij (D_i^2 - 1)/(q^2 - 1)
    (a)/(b) are the exponentiated forms of the T-commutators.  Serre
    relations are not checked.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = rep.q
    if abs(q**2 - 1.0) < 1e-12:
        raise ValueError("relation (c) is singular at q^2 = 1")
    dim = rep.dim
    eye = np.eye(dim, dtype=np.complex128)
    worst = 0.0
    for i in range(rep.nodes):
        casimir = (rep.D[i] @ rep.D[i] - eye) / (q**2 - 1.0)
        for j in range(rep.nodes):
            a_ij = cartan_inner(rep.n, i, j)
            worst = max(
                worst,
                relative_defect(rep.D[i] @ rep.Q[j] @ rep.Dinv[i], q**a_ij * rep.Q[j]),
                relative_defect(rep.D[i] @ rep.Qbar[j] @ rep.Dinv[i], q**-a_ij * rep.Qbar[j]),
                relative_defect(
                    rep.Q[i] @ rep.Qbar[j] - q**-a_ij * rep.Qbar[j] @ rep.Q[i],
                    casimir if i == j else np.zeros((dim, dim)),
                ),
            )
    return VerificationReport(
        name="algebra-relations",
        deviation=worst,
        lam=1.0,
        tol=tol,
        passed=worst <= tol,
        context={"n": rep.n, "q": rep.q, "x": rep.x, "dual": rep.is_dual},
    )
