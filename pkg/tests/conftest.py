import numpy as np
import pytest

from qreflect.intertwiners import reflection_dual, solve_boundary, solve_bulk
from qreflect.reps import vector_rep


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def generic_point(rng):
    """A (q, x) pair away from roots of unity and rapidity degeneracies."""
    q = rng.uniform(0.6, 1.4) * np.exp(1j * rng.uniform(0.15, 1.2))
    x = np.exp(rng.uniform(-0.9, 0.9) + 1j * rng.uniform(-0.7, 0.7))
    return q, x


def eps_star(q):
    """Boundary parameter scale at which the engine coideal system solves."""
    return 1 / np.sqrt((1 - q) * (1 - 1 / q))


def engine_point(n, q, thetas, eps):
    """Solve the K's and the four S channels of one engine-convention point.

    Returns None if any required solution space fails to be one-dimensional,
    otherwise a dict of reps and normalized matrices.
    """
    x, y = (np.exp(t) for t in thetas[:2])
    mu, nu = vector_rep(n, q, x), vector_rep(n, q, y)
    mub, nub = reflection_dual(mu), reflection_dual(nu)
    solved = {
        "k_mu": solve_boundary(mu, mub, eps),
        "k_nu": solve_boundary(nu, nub, eps),
        "s_mn": solve_bulk(mu, nu),
        "s_m_nb": solve_bulk(mu, nub),
        "s_n_mb": solve_bulk(nu, mub),
        "s_nb_mb": solve_bulk(nub, mub),
    }
    if any(sol.dimension != 1 for sol in solved.values()):
        return None
    out = {key: sol.normalized for key, sol in solved.items()}
    out.update(mu=mu, nu=nu, mub=mub, nub=nub)
    return out
