"""
Defines the multi-view dataset container.
"""

import dataclasses

import numpy as np

from .. import exceptions


@dataclasses.dataclass
class MultiViewDataset:
    """
    P views over the same N samples. Column j of every view describes sample j; the leading n_labeled
    columns form the labeled block.
    """
    views: list
    truth: np.ndarray = None
    n_labeled: int = 0
    class_count: int = None
    sample_index: np.ndarray = None

    def __post_init__(self):
        if not self.views:
            raise exceptions.DatasetError('A dataset needs at least one view')

        self.views = [np.asarray(view, dtype=np.float64) for view in self.views]

        for p, view in enumerate(self.views):
            if view.ndim != 2 or min(view.shape) < 1:
                raise exceptions.DatasetError(f'View {p} must be a non-empty matrix, got shape {view.shape}')
            if view.shape[1] != self.views[0].shape[1]:
                raise exceptions.DatasetError(
                    f'View 0 has {self.views[0].shape[1]} samples but view {p} has {view.shape[1]}')
            if not np.all(np.isfinite(view)):
                raise exceptions.NonFiniteError(f'view {p}')

        n = self.n_samples
        self.n_labeled = int(self.n_labeled)

        if not 0 <= self.n_labeled <= n:
            raise exceptions.DatasetError(f'n_labeled={self.n_labeled} is outside [0, {n}]')

        if self.truth is not None:
            self.truth = np.asarray(self.truth, dtype=np.int64).ravel()

            if self.truth.size != n:
                raise exceptions.LabelError(f'Got {self.truth.size} labels for {n} samples')
            if np.any(self.truth < 0):
                raise exceptions.LabelError('Class ids must be 0-based nonnegative integers')
        elif self.n_labeled > 0:
            raise exceptions.LabelError('Labeled samples need ground-truth labels')

        if self.class_count is None and self.truth is not None:
            self.class_count = int(self.truth.max()) + 1
        elif self.class_count is not None:
            self.class_count = int(self.class_count)

            if self.truth is not None and self.truth.max() >= self.class_count:
                raise exceptions.LabelError(f'Label {self.truth.max()} is out of range for C={self.class_count}')

        if self.sample_index is None:
            self.sample_index = np.arange(n)

    @property
    def n_samples(self):
        return self.views[0].shape[1]

    @property
    def n_unlabeled(self):
        return self.n_samples - self.n_labeled

    @property
    def view_count(self):
        return len(self.views)

    @property
    def view_dims(self):
        return [view.shape[0] for view in self.views]

    @property
    def labeled_truth(self):
        """
        Class ids of the labeled block.
        """
        if self.truth is None:
            return np.zeros(0, dtype=np.int64)

        return self.truth[:self.n_labeled]

    def concatenated(self):
        """
        Returns all views stacked vertically, a (Σ M^p) x N matrix.
        """
        return np.vstack(self.views)

    def replace(self, **changes):
        """
        Returns a copy of the dataset with the given fields replaced.
        """
        return dataclasses.replace(self, **changes)

    def with_views(self, views):
        """
        Returns a copy holding transformed views, the samples and their order unchanged.
        """
        return self.replace(views=views)

    def permuted(self, order, n_labeled):
        """
        Returns a copy whose columns follow order and whose leading n_labeled columns are labeled.

        :param order: (required). Permutation of range(N).
        :param int n_labeled: (required). Size of the labeled block after permutation.
        """
        order = np.asarray(order)
        return self.replace(views=[view[:, order] for view in self.views],
                            truth=None if self.truth is None else self.truth[order],
                            n_labeled=n_labeled, sample_index=self.sample_index[order])

    def describe(self):
        """
        Returns dataset statistics: view dimensions, sample count, class count and labeled count.
        """
        return {
            'view_dims': self.view_dims,
            'n_samples': self.n_samples,
            'n_classes': self.class_count,
            'n_labeled': self.n_labeled,
        }
