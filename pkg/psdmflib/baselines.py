"""
Reference clusterings the factorization is compared against.
"""

import logging

from sklearn.cluster import KMeans

logger = logging.getLogger(__name__)


def kmeans_concatenated(dataset, n_clusters=None, seed=0):
    """
    Runs k-means on the samples described by all views stacked together and returns their cluster ids.

    :param MultiViewDataset dataset: (required). Data.
    :param int n_clusters: (optional). Cluster count, the dataset's class count by default.
    :param int seed: (optional). Random seed.
    """
    n_clusters = n_clusters or dataset.class_count
    model = KMeans(n_clusters=n_clusters, n_init=10, random_state=seed).fit(dataset.concatenated().T)
    logger.debug('k-means baseline with %d clusters, inertia %.6g', n_clusters, model.inertia_)
    return model.labels_
