"""
Labeled/unlabeled partitioning and feature normalization.
"""

import enum
import math
import logging
import warnings

import numpy as np
from sklearn.preprocessing import normalize as sk_normalize, minmax_scale

from .. import exceptions

logger = logging.getLogger(__name__)


class NormalizeMode(enum.Enum):
    none = 'none'
    unit_column_l2 = 'unit-column-l2'
    min_max_per_feature = 'min-max-per-feature'
    default = 'unit-column-l2'


def labeled_count(fraction, n_samples):
    """
    Returns ⌈fraction · N⌉, ignoring floating point noise in the product.
    """
    return min(n_samples, math.ceil(fraction * n_samples - 1e-9))


def class_quotas(counts, n_labeled):
    """
    Splits n_labeled labels over classes: one per class, the rest proportionally to the class sizes
    minus one, largest remainders first.

    :param counts: (required). Samples per class.
    :param int n_labeled: (required). Total labels, at least len(counts).
    """
    counts = np.asarray(counts)
    quotas = np.ones_like(counts)
    spare = counts - 1
    remaining = n_labeled - counts.size

    if remaining > 0 and spare.sum() > 0:
        exact = remaining * spare / spare.sum()
        quotas += np.floor(exact).astype(counts.dtype)
        leftover = n_labeled - quotas.sum()
        # stable sort keeps the lower class first on equal remainders
        for c in np.argsort(-(exact - np.floor(exact)), kind='stable')[:leftover]:
            quotas[c] += 1

    return quotas


def split_labeled(dataset, fraction, seed=0):
    """
    Selects ⌈fraction · N⌉ samples stratified by class and permutes every view so that they lead.

    :param MultiViewDataset dataset: (required). Dataset with ground truth.
    :param float fraction: (required). Labeled fraction in (0, 1].
    :param int seed: (optional). Random seed.
    """
    if dataset.truth is None:
        raise exceptions.LabelError('Splitting into labeled and unlabeled samples needs ground-truth labels')

    if not 0 < fraction <= 1:
        raise exceptions.ConfigError('psdmf.label_fraction', f'{fraction} is outside (0, 1]')

    rng = np.random.default_rng(seed)
    n = dataset.n_samples
    n_labeled = labeled_count(fraction, n)
    classes, counts = np.unique(dataset.truth, return_counts=True)

    if n_labeled < classes.size:
        warnings.warn(f'{n_labeled} labeled samples can not cover {classes.size} classes, '
                      'sampling without stratification', exceptions.StratificationWarning)
        labeled = rng.permutation(n)[:n_labeled]
    else:
        quotas = class_quotas(counts, n_labeled)
        labeled = np.concatenate([rng.permutation(np.flatnonzero(dataset.truth == c))[:q]
                                  for c, q in zip(classes, quotas)])
        labeled = rng.permutation(labeled)

    unlabeled = rng.permutation(np.setdiff1d(np.arange(n), labeled))
    logger.info('Labeled block: %d of %d samples', n_labeled, n)
    return dataset.permuted(np.concatenate([labeled, unlabeled]).astype(np.int64), n_labeled)


def normalize(dataset, mode=NormalizeMode.default.value):
    """
    Normalizes every view: none, unit-column-l2 (every sample column scaled to unit Euclidean norm)
    or min-max-per-feature (every feature row mapped onto [0, 1]). Planted factors of a synthetic
    dataset describe the raw views and are dropped by any mode other than none.

    :param MultiViewDataset dataset: (required). Dataset to normalize.
    :param string mode: (optional). Normalization mode.
    """
    mode = NormalizeMode(mode)

    if mode is NormalizeMode.none:
        return dataset
    if mode is NormalizeMode.unit_column_l2:
        views = [sk_normalize(view, norm='l2', axis=0) for view in dataset.views]
    else:
        views = [minmax_scale(view, axis=1) for view in dataset.views]

    return dataset.with_views(views)
