import itertools

import numpy as np
from sklearn.metrics import normalized_mutual_info_score

from . import BasePsdmfTestCase

from psdmflib import exceptions, metrics


class AccuracyTestCase(BasePsdmfTestCase):
    def test_identical(self):
        self.assertEqual(metrics.accuracy([0, 1, 2, 2], [0, 1, 2, 2]), 1.0)

    def test_relabeled(self):
        truth = self.rng.integers(0, 4, size=30)
        relabel = np.array([2, 0, 3, 1])
        self.assertEqual(metrics.accuracy(relabel[truth], truth), 1.0)

    def test_small_example(self):
        self.assertEqual(metrics.accuracy([0, 0, 1, 1], [1, 1, 0, 2]), 0.75)

    def test_matches_exhaustive_search(self):
        for trial in range(200):
            classes = 2 + trial % 5
            pred = self.rng.integers(0, classes, size=25)
            truth = self.rng.integers(0, classes, size=25)
            best = max(np.mean(np.array(perm)[pred] == truth) for perm in itertools.permutations(range(classes)))
            self.assertAlmostEqual(metrics.accuracy(pred, truth), best)

    def test_more_clusters_than_classes(self):
        self.assertEqual(metrics.accuracy([0, 1, 2, 3], [0, 0, 1, 1]), 0.5)

    def test_errors(self):
        self.assertRaises(exceptions.MetricInputError, lambda: metrics.accuracy([], []))
        self.assertRaises(exceptions.MetricInputError, lambda: metrics.accuracy([0, 1], [0]))


class NmiTestCase(BasePsdmfTestCase):
    def test_identical(self):
        self.assertAlmostEqual(metrics.nmi([0, 1, 1, 2], [2, 0, 0, 1]), 1.0)

    def test_single_cluster_is_zero(self):
        self.assertEqual(metrics.nmi([0, 0, 0, 0], [0, 1, 0, 1]), 0.0)
        self.assertEqual(metrics.nmi([0, 1, 0, 1], [1, 1, 1, 1]), 0.0)
        self.assertEqual(metrics.nmi([3, 3], [1, 1]), 0.0)

    def test_independent(self):
        self.assertAlmostEqual(metrics.nmi([0, 0, 1, 1], [0, 1, 0, 1]), 0.0)

    def test_matches_geometric_normalization(self):
        for _ in range(50):
            pred = self.rng.integers(0, 4, size=40)
            truth = self.rng.integers(0, 3, size=40)
            expected = normalized_mutual_info_score(truth, pred, average_method='geometric')
            self.assertAlmostEqual(metrics.nmi(pred, truth), expected, places=10)

    def test_errors(self):
        self.assertRaises(exceptions.MetricInputError, lambda: metrics.nmi([], [1]))


class PurityTestCase(BasePsdmfTestCase):
    def test_identical(self):
        self.assertEqual(metrics.purity([1, 0, 2], [1, 0, 2]), 1.0)

    def test_single_cluster(self):
        self.assertAlmostEqual(metrics.purity(np.zeros(12), np.arange(12) % 4), 0.25)

    def test_matches_majority_count(self):
        pred = self.rng.integers(0, 5, size=50)
        truth = self.rng.integers(0, 3, size=50)
        expected = sum(np.bincount(truth[pred == cluster]).max() for cluster in np.unique(pred)) / 50
        self.assertAlmostEqual(metrics.purity(pred, truth), expected)

    def test_errors(self):
        self.assertRaises(exceptions.MetricInputError, lambda: metrics.purity([0], []))


class EvaluateTestCase(BasePsdmfTestCase):
    def test_properties(self):
        for _ in range(100):
            pred = self.rng.integers(0, 4, size=30)
            truth = self.rng.integers(0, 4, size=30)
            report = metrics.evaluate(pred, truth)
            self.assertGreaterEqual(report.purity, report.acc)

            for value in report.to_dict().values():
                self.assertTrue(0 <= value <= 1)

            relabeled = metrics.evaluate(np.array([3, 1, 0, 2])[pred], truth)
            self.assertAlmostEqual(relabeled.acc, report.acc)
            self.assertAlmostEqual(relabeled.nmi, report.nmi)
            self.assertAlmostEqual(relabeled.purity, report.purity)

    def test_to_dict(self):
        report = metrics.evaluate([0, 1], [0, 1]).to_dict()
        self.assertEqual(set(report), {'acc', 'nmi', 'purity'})

        for value in report.values():
            self.assertAlmostEqual(value, 1.0)
