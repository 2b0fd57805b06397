"""
Dense linear-algebra primitives shared by all solvers.

Matrices are plain two-dimensional ``numpy.ndarray`` objects of ``float64``. The helpers below add
the finiteness and shape checks the solvers rely on; matrix products, transposes and slicing are
taken from numpy directly.
"""

import logging
import dataclasses

import numpy as np
import scipy.linalg

from . import exceptions

logger = logging.getLogger(__name__)

DEFAULT_COND_LIMIT = 1e12
RIDGE_FACTOR = 1e-10


def check_finite(h, where):
    """
    Raises NonFiniteError if h holds NaN or Inf, returns h otherwise.

    :param h: (required). Array to check.
    :param string where: (required). Name of the operation, used in the error message.
    """
    if not np.all(np.isfinite(h)):
        raise exceptions.NonFiniteError(where)

    return h


def as_matrix(h, where='matrix'):
    """
    Converts h to a finite float64 matrix with at least one row and one column.

    :param h: (required). Array-like to convert.
    :param string where: (optional). Name of the operation, used in error messages.
    """
    h = np.asarray(h, dtype=np.float64)

    if h.ndim == 1:
        h = h.reshape(1, -1)
    elif h.ndim != 2:
        raise exceptions.ShapeMismatchError(where, h.shape)

    if h.shape[0] < 1 or h.shape[1] < 1:
        raise exceptions.EmptyMatrixError(where)

    return check_finite(h, where)


def split_pos(h):
    """
    Positive part [H]+ = (|H| + H) / 2.

    :param h: (required). Finite matrix.
    """
    h = check_finite(np.asarray(h, dtype=np.float64), 'split_pos')
    return (np.abs(h) + h) / 2


def split_neg(h):
    """
    Negative part [H]- = (|H| - H) / 2, stored as nonnegative magnitudes.

    :param h: (required). Finite matrix.
    """
    h = check_finite(np.asarray(h, dtype=np.float64), 'split_neg')
    return (np.abs(h) - h) / 2


def frobenius_norm(h):
    h = check_finite(np.asarray(h, dtype=np.float64), 'frobenius_norm')
    return float(np.sqrt(np.sum(h * h)))


def l21_norm(w):
    """
    Sum of the Euclidean norms of the rows of w.

    :param w: (required). Finite matrix.
    """
    w = check_finite(np.asarray(w, dtype=np.float64), 'l21_norm')
    return float(np.sum(np.sqrt(np.sum(w * w, axis=1))))


def trace_quadratic(v, l):
    """
    Returns tr(V·L·Vᵀ) without forming the product V·L·Vᵀ.

    :param v: (required). Matrix with as many columns as l has rows.
    :param l: (required). Square matrix.
    """
    if v.shape[1] != l.shape[0]:
        raise exceptions.ShapeMismatchError('trace_quadratic', v.shape, l.shape)

    return float(np.sum((v @ l) * v))


def chain_product(factors, size=None):
    """
    Returns the left-to-right product of factors, or the identity of the given size when factors is empty.

    :param list factors: (required). Conformable matrices.
    :param int size: (optional). Identity size used for an empty chain.
    """
    if not factors:
        return np.eye(size)

    result = factors[0]

    for factor in factors[1:]:
        result = result @ factor

    return result


def multiplicative_step(v, numerator, denominator, floor):
    """
    Returns V ⊙ sqrt(numerator / (denominator + floor)), the square-root multiplicative rule.

    :param v: (required). Current nonnegative matrix.
    :param numerator: (required). Nonnegative numerator of the same shape.
    :param denominator: (required). Nonnegative denominator of the same shape.
    :param float floor: (required). Added to the denominator to avoid division by zero.
    """
    return v * np.sqrt(numerator / (denominator + floor))


@dataclasses.dataclass(frozen=True)
class SpdSolution:
    x: np.ndarray
    regularized: bool = False
    ridge: float = 0.0


def solve_spd(a, b, cond_limit=DEFAULT_COND_LIMIT):
    """
    Solves A·X = B for a symmetric positive (semi-)definite A without forming an inverse. When A is
    singular or its condition estimate exceeds cond_limit, (A + εI)·X = B is solved instead with
    ε = 1e-10 · trace(A) / rows(A) and the solution is flagged as regularized.

    :param a: (required). Square symmetric matrix.
    :param b: (required). Right-hand side with rows(A) rows.
    :param float cond_limit: (optional). Condition number above which the ridge is applied.
    """
    a = check_finite(np.asarray(a, dtype=np.float64), 'solve_spd')
    b = check_finite(np.asarray(b, dtype=np.float64), 'solve_spd')

    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.shape[0] != a.shape[0]:
        raise exceptions.ShapeMismatchError('solve_spd', a.shape, b.shape)

    a = (a + a.T) / 2
    ridge = 0.0

    with np.errstate(all='ignore'):
        cond = np.linalg.cond(a)

    if not np.isfinite(cond) or cond > cond_limit:
        scale = np.trace(a) / a.shape[0]
        ridge = RIDGE_FACTOR * scale if scale > 0 else RIDGE_FACTOR
        a = a + ridge * np.eye(a.shape[0])
        logger.debug('Ridge %.3e applied to a %dx%d system with condition estimate %.3e',
                     ridge, a.shape[0], a.shape[1], cond)

    try:
        x = scipy.linalg.cho_solve(scipy.linalg.cho_factor(a), b)
    except np.linalg.LinAlgError:
        # round-off can leave a semi-definite Gram matrix slightly indefinite
        x = scipy.linalg.lstsq(a, b)[0]

    return SpdSolution(check_finite(x, 'solve_spd'), regularized=ridge > 0, ridge=ridge)
