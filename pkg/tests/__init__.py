from unittest import mock, TestCase

import numpy as np

from psdmflib import graph, psdmf
from psdmflib.datasets import MultiViewDataset


class BasePsdmfTestCase(TestCase):
    seed = 0

    def setUp(self):
        self.rng = np.random.default_rng(self.seed)
        self.addCleanup(mock.patch.stopall)

    def random_dataset(self, view_dims=(6, 5), n_samples=20, n_labeled=5, n_classes=3, rng=None):
        """
        Mixed-sign views with every class present among the labeled samples.
        """
        rng = rng or self.rng
        truth = np.arange(n_samples) % n_classes
        views = [rng.standard_normal((dim, n_samples)) for dim in view_dims]
        return MultiViewDataset(views=views, truth=truth, n_labeled=n_labeled, class_count=n_classes)

    def random_state(self, dataset, specific_dim=2, common_dim=2, hidden=(), knn_k=3, rng=None):
        """
        Random state around dataset: positive V blocks, Gaussian U's and W, positive α. hidden lists the
        sizes of the layers above the last one, so depth = len(hidden) + 1.
        """
        rng = rng or self.rng
        k = specific_dim + common_dim
        layers = []

        for dim in dataset.view_dims:
            sizes = [dim, *hidden, k]
            layers.append([rng.standard_normal((rows, cols)) for rows, cols in zip(sizes, sizes[1:])])

        n = dataset.n_samples
        factor = psdmf.PartiallySharedFactor(
            specific=[0.1 + rng.random((specific_dim, n)) for _ in dataset.views],
            common=0.1 + rng.random((common_dim, n)), n_labeled=dataset.n_labeled)
        return psdmf.ModelState(
            layers=layers, factor=factor, W=rng.standard_normal((factor.total_dim, dataset.class_count)),
            alpha=0.5 + rng.random(dataset.view_count),
            Y=psdmf.build_label_matrix(dataset.labeled_truth, dataset.class_count),
            laplacians=[graph.build_graph(x, knn_k) for x in dataset.views])

    def assertAllClose(self, actual, expected, rtol=1e-10, atol=0.0):
        np.testing.assert_allclose(actual, expected, rtol=rtol, atol=atol)

    def assertRelativeError(self, actual, expected, tol):
        actual, expected = np.asarray(actual), np.asarray(expected)
        self.assertLessEqual(np.linalg.norm(actual - expected), tol * max(np.linalg.norm(expected), 1e-300))
