"""
Synthetic multi-view data with a planted partially shared factorization.
"""

import dataclasses

import numpy as np

from .. import exceptions, utilities
from .base import MultiViewDataset

CLASS_SEPARATION = 2.0


@dataclasses.dataclass
class SyntheticSpec:
    views: int = 2
    n_samples: int = 120
    n_classes: int = 3
    specific_dim: int = 3
    common_dim: int = 3
    view_dims: tuple = (50, 40)
    noise_sigma: float = 0.05
    seed: int = 0

    def __post_init__(self):
        self.views = int(self.views)
        self.n_samples = int(self.n_samples)
        self.n_classes = int(self.n_classes)
        self.specific_dim = int(self.specific_dim)
        self.common_dim = int(self.common_dim)
        self.view_dims = tuple(utilities.parse_list(self.view_dims, int, 'synthetic.view_dims'))
        self.noise_sigma = float(self.noise_sigma)
        self.seed = int(self.seed)

        if len(self.view_dims) != self.views:
            raise exceptions.ConfigError('synthetic.view_dims', f'{len(self.view_dims)} dims for {self.views} views')
        if min(self.specific_dim, self.common_dim, self.n_classes, *self.view_dims) < 1:
            raise exceptions.ConfigError('synthetic', 'dimensions and class count must be positive')
        if self.n_samples < self.n_classes:
            raise exceptions.ConfigError('synthetic.n_samples', 'fewer samples than classes')
        if self.noise_sigma < 0:
            raise exceptions.ConfigError('synthetic.noise_sigma', 'must be nonnegative')


@dataclasses.dataclass
class PlantedFactors:
    """
    Generating factors: X^p = loadings[p] · [specific[p]; common] + noise.
    """
    loadings: list
    specific: list
    common: np.ndarray

    def representation(self, view):
        return np.vstack([self.specific[view], self.common])


@dataclasses.dataclass
class SyntheticDataset(MultiViewDataset):
    planted: PlantedFactors = None

    def permuted(self, order, n_labeled):
        dataset = super().permuted(order, n_labeled)

        if self.planted is not None:
            dataset.planted = PlantedFactors(loadings=self.planted.loadings,
                                             specific=[v[:, order] for v in self.planted.specific],
                                             common=self.planted.common[:, order])

        return dataset

    def with_views(self, views):
        # the planted factors generate the raw views only
        return self.replace(views=views, planted=None)


def generate_synthetic(spec=None):
    """
    Draws a dataset whose shared block clusters by class: every class has a nonnegative profile in the
    common factor, view-specific blocks are unstructured nonnegative noise and the loadings are
    Gaussian (mixed sign).

    :param SyntheticSpec spec: (optional). Generator settings.
    """
    spec = spec or SyntheticSpec()
    rng = np.random.default_rng(spec.seed)

    truth = rng.permutation(np.arange(spec.n_samples) % spec.n_classes)
    profiles = 0.1 + rng.random((spec.common_dim, spec.n_classes))

    for c in range(spec.n_classes):
        profiles[c % spec.common_dim, c] += CLASS_SEPARATION * (1 + c // spec.common_dim)

    common = profiles[:, truth] + 0.1 * rng.random((spec.common_dim, spec.n_samples))
    specific, loadings, views = [], [], []

    for dim in spec.view_dims:
        v_s = 0.5 * rng.random((spec.specific_dim, spec.n_samples))
        u = rng.standard_normal((dim, spec.specific_dim + spec.common_dim))
        x = u @ np.vstack([v_s, common])

        if spec.noise_sigma > 0:
            x = x + spec.noise_sigma * rng.standard_normal(x.shape)

        specific.append(v_s)
        loadings.append(u)
        views.append(x)

    return SyntheticDataset(views=views, truth=truth, class_count=spec.n_classes,
                            planted=PlantedFactors(loadings=loadings, specific=specific, common=common))
