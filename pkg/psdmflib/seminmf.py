"""
Single-layer Semi-NMF, X ≈ U·V with only V constrained nonnegative.
"""

import enum
import logging
import dataclasses

import numpy as np
from sklearn.cluster import KMeans

from . import exceptions, numerics

logger = logging.getLogger(__name__)

DENOMINATOR_FLOOR = 1e-10
INDICATOR_OFFSET = 0.2


class InitMethod(enum.Enum):
    kmeans = 'kmeans'
    random = 'random'


@dataclasses.dataclass
class SemiNmfOptions:
    max_iter: int = 100
    tol: float = 1e-6
    seed: int = 0
    init: str = 'kmeans'

    def __post_init__(self):
        self.max_iter = int(self.max_iter)
        self.tol = float(self.tol)
        self.seed = int(self.seed)
        self.init = InitMethod(self.init).value


@dataclasses.dataclass
class SemiNmfResult:
    U: np.ndarray
    V: np.ndarray
    objective_trace: list
    iterations: int
    converged: bool


def reconstruction_error(x, u, v):
    r = x - u @ v
    return float(np.sum(r * r))


def seminmf_update_u(x, v):
    """
    Least-squares step U = X·Vᵀ·(V·Vᵀ)^-1, realised as a linear solve.

    :param x: (required). Data matrix, M x N.
    :param v: (required). Nonnegative representation, k x N.
    """
    if x.shape[1] != v.shape[1]:
        raise exceptions.ShapeMismatchError('seminmf_update_u', x.shape, v.shape)

    return numerics.solve_spd(v @ v.T, v @ x.T).x.T


def seminmf_update_v(x, u, v, floor=DENOMINATOR_FLOOR):
    """
    Multiplicative step V <- V ⊙ sqrt(([UᵀX]+ + [UᵀU]-·V) / ([UᵀX]- + [UᵀU]+·V)).

    :param x: (required). Data matrix, M x N.
    :param u: (required). Mixed-sign basis, M x k.
    :param v: (required). Nonnegative representation, k x N.
    :param float floor: (optional). Denominator floor.
    """
    if x.shape[0] != u.shape[0] or u.shape[1] != v.shape[0] or x.shape[1] != v.shape[1]:
        raise exceptions.ShapeMismatchError('seminmf_update_v', x.shape, u.shape, v.shape)

    utx = u.T @ x
    utu = u.T @ u
    numerator = numerics.split_pos(utx) + numerics.split_neg(utu) @ v
    denominator = numerics.split_neg(utx) + numerics.split_pos(utu) @ v
    return numerics.check_finite(numerics.multiplicative_step(v, numerator, denominator, floor), 'seminmf_update_v')


def initial_representation(x, k, seed=0, method='kmeans'):
    """
    Strictly positive starting V: k-means cluster indicators of the columns of x plus 0.2, or uniform
    values in (0, 1] when method is random.

    :param x: (required). Data matrix, M x N.
    :param int k: (required). Rank.
    :param int seed: (optional). Random seed.
    :param string method: (optional). kmeans or random.
    """
    n = x.shape[1]

    if InitMethod(method) is InitMethod.random:
        return 1.0 - np.random.default_rng(seed).random((k, n))

    labels = KMeans(n_clusters=k, n_init=10, random_state=seed).fit(x.T).labels_
    v = np.full((k, n), INDICATOR_OFFSET)
    v[labels, np.arange(n)] += 1.0
    return v


def fit_seminmf(x, k, opts=None):
    """
    Alternates the U and V steps until the relative change of ‖X - U·V‖² drops below tol or max_iter
    iterations are done.

    :param x: (required). Data matrix, M x N.
    :param int k: (required). Rank, 1 <= k <= min(M, N).
    :param SemiNmfOptions opts: (optional). Solver options.
    """
    opts = opts or SemiNmfOptions()
    x = numerics.as_matrix(x, 'fit_seminmf')

    if not 1 <= k <= min(x.shape):
        raise exceptions.RankError(k, *x.shape)

    v = initial_representation(x, k, seed=opts.seed, method=opts.init)
    u = seminmf_update_u(x, v)
    trace = [reconstruction_error(x, u, v)]
    converged = False
    iterations = 0

    while iterations < opts.max_iter:
        v = seminmf_update_v(x, u, v)
        u = seminmf_update_u(x, v)
        trace.append(reconstruction_error(x, u, v))
        iterations += 1

        if abs(trace[-2] - trace[-1]) <= opts.tol * max(trace[-2], np.finfo(float).tiny):
            converged = True
            break

    logger.debug('Semi-NMF of a %dx%d matrix with k=%d: %d iterations, error %.6e',
                 x.shape[0], x.shape[1], k, iterations, trace[-1])
    return SemiNmfResult(U=u, V=v, objective_trace=trace, iterations=iterations, converged=converged)
