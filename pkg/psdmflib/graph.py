"""
Defines k-NN affinity graphs and graph Laplacians used by the manifold regularizer.
"""

import logging
import dataclasses

import numpy as np
from scipy.spatial.distance import cdist

from . import exceptions, numerics

logger = logging.getLogger(__name__)

DEFAULT_KNN = 5


@dataclasses.dataclass(frozen=True)
class GraphLaplacian:
    """
    Binary affinity S, degree matrix D and Laplacian L = D - S of one view.
    """
    S: np.ndarray
    D: np.ndarray
    L: np.ndarray
    k: int = None

    @property
    def size(self):
        return self.L.shape[0]

    def labeled_block(self, n_labeled):
        """
        Returns the leading N_l columns of L.

        :param int n_labeled: (required). Number of labeled columns.
        """
        return self.L[:, :n_labeled]

    def unlabeled_block(self, n_labeled):
        """
        Returns the trailing N_u columns of L.

        :param int n_labeled: (required). Number of labeled columns.
        """
        return self.L[:, n_labeled:]


def build_knn_affinity(x, k=DEFAULT_KNN):
    """
    Builds the symmetric binary k-NN affinity of the columns of x. Column q is a neighbor of column j when
    it is among the k nearest columns of j by Euclidean distance; the relation is symmetrized by union.
    Distance ties go to the lower column index.

    :param x: (required). Features x samples matrix.
    :param int k: (optional). Neighbor count.
    """
    x = numerics.as_matrix(x, 'build_knn_affinity')
    n = x.shape[1]

    if n < 2 or not 1 <= k < n:
        raise exceptions.NeighborCountError(k, n)

    distances = cdist(x.T, x.T, metric='sqeuclidean')
    np.fill_diagonal(distances, np.inf)
    neighbors = np.argsort(distances, axis=1, kind='stable')[:, :k]

    s = np.zeros((n, n))
    s[np.repeat(np.arange(n), k), neighbors.ravel()] = 1.0
    return np.maximum(s, s.T)


def laplacian(s, k=None):
    """
    Returns a GraphLaplacian for the affinity s.

    :param s: (required). Symmetric nonnegative affinity with a zero diagonal.
    :param int k: (optional). Neighbor count the affinity was built with, kept for reference.
    """
    s = numerics.as_matrix(s, 'laplacian')

    if s.shape[0] != s.shape[1] or not np.array_equal(s, s.T) or np.any(s < 0) or np.any(np.diag(s) != 0):
        raise exceptions.AsymmetricAffinityError

    d = np.diag(s.sum(axis=1))
    return GraphLaplacian(S=s, D=d, L=d - s, k=k)


def build_graph(x, k=DEFAULT_KNN):
    """
    Shortcut for laplacian(build_knn_affinity(x, k)).

    :param x: (required). Features x samples matrix.
    :param int k: (optional). Neighbor count.
    """
    graph = laplacian(build_knn_affinity(x, k), k=k)
    logger.debug('Built %d-NN graph over %d samples with %d edges', k, graph.size, int(graph.S.sum()) // 2)
    return graph


def regularizer_value(v, l):
    """
    Graph regularizer tr(V·L·Vᵀ).

    :param v: (required). Representation with one column per sample.
    :param l: (required). Graph Laplacian.
    """
    return numerics.trace_quadratic(v, l)
