"""
Clustering evaluation: accuracy under the best one-to-one relabeling, normalized mutual information and purity.
"""

import dataclasses

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.stats import entropy
from sklearn.metrics.cluster import contingency_matrix, mutual_info_score

from . import exceptions


@dataclasses.dataclass(frozen=True)
class MetricReport:
    acc: float
    nmi: float
    purity: float

    def to_dict(self):
        return dataclasses.asdict(self)


def _labels(pred, truth):
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()

    if pred.size == 0 or truth.size == 0:
        raise exceptions.MetricInputError('labelings are empty')
    if pred.size != truth.size:
        raise exceptions.MetricInputError(f'{pred.size} predicted labels for {truth.size} true labels')

    return pred, truth


def accuracy(pred, truth):
    """
    Fraction of samples matched by the best bijection between predicted and true class ids, found by
    optimal assignment on the contingency table.

    :param pred: (required). Predicted class ids.
    :param truth: (required). True class ids.
    """
    pred, truth = _labels(pred, truth)
    table = contingency_matrix(truth, pred)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return float(table[rows, cols].sum() / truth.size)


def nmi(pred, truth):
    """
    I(pred; truth) / sqrt(H(pred)·H(truth)), defined as 0 when either labeling has a single class.

    :param pred: (required). Predicted class ids.
    :param truth: (required). True class ids.
    """
    pred, truth = _labels(pred, truth)
    table = contingency_matrix(truth, pred)
    h_truth = entropy(table.sum(axis=1))
    h_pred = entropy(table.sum(axis=0))

    if h_truth <= 0 or h_pred <= 0:
        return 0.0

    score = mutual_info_score(None, None, contingency=table) / np.sqrt(h_truth * h_pred)
    return float(np.clip(score, 0.0, 1.0))


def purity(pred, truth):
    """
    (1/N)·Σ over predicted clusters of the size of their majority true class.

    :param pred: (required). Predicted class ids.
    :param truth: (required). True class ids.
    """
    pred, truth = _labels(pred, truth)
    return float(contingency_matrix(truth, pred).max(axis=0).sum() / truth.size)


def evaluate(pred, truth):
    return MetricReport(acc=accuracy(pred, truth), nmi=nmi(pred, truth), purity=purity(pred, truth))
