"""
Provides public API.
"""

from . import exceptions, metrics, psdmf
from .psdmf import PsdmfConfig
from .datasets import MultiViewDataset
from .version import __version__


class Psdmf:
    """
    Entry point for fitting and evaluating the factorization.
    """
    def __init__(self, config=None, **kwargs):
        """
        :param PsdmfConfig config: (optional). Configuration object.
        :param kwargs: (optional). PsdmfConfig fields, used when config is not given.
        """
        self.config = config or PsdmfConfig(**kwargs)
        self.result = None
        self.dataset = None

    def fit(self, dataset, init=None):
        """
        Fits the model on a dataset whose labeled block leads.

        :param MultiViewDataset dataset: (required). Data.
        :param ModelState init: (optional). Starting state, skips pre-training.
        """
        self.result = psdmf.fit(dataset, self.config, init=init)
        self.dataset = dataset
        return self

    def _fitted(self):
        if self.result is None:
            raise exceptions.NotFittedError

        return self.result

    @property
    def state(self):
        return self._fitted().state

    @property
    def trace(self):
        return list(self._fitted().trace)

    def predict(self):
        """
        Returns the predicted class of every sample of the fitted dataset.
        """
        return psdmf.predict_labels(self.state)

    def evaluate(self, truth=None):
        """
        Scores the predictions against truth, the fitted dataset's labels by default.

        :param truth: (optional). True class ids.
        """
        truth = self.dataset.truth if truth is None else truth

        if truth is None:
            raise exceptions.LabelError('No ground truth to evaluate against')

        return metrics.evaluate(self.predict(), truth)
