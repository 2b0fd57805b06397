"""
Layer-wise Semi-NMF pre-training of the deep factorization of every view.
"""

import logging
import dataclasses

import numpy as np

from . import exceptions, seminmf

logger = logging.getLogger(__name__)


@dataclasses.dataclass
class LayerStack:
    """
    Pre-trained factors: layers[p] is [U_1^p, ..., U_m^p] and representations[p] is the deepest V_m^p.
    """
    layers: list
    representations: list

    @property
    def view_count(self):
        return len(self.layers)

    @property
    def depth(self):
        return len(self.layers[0]) if self.layers else 0

    def check_chain(self):
        """
        Returns True when every view's shape chain is consistent and its V_m^p is nonnegative.
        """
        for us, v in zip(self.layers, self.representations):
            for upper, lower in zip(us, us[1:]):
                if upper.shape[1] != lower.shape[0]:
                    return False

            if us[-1].shape[1] != v.shape[0] or np.any(v < 0):
                return False

        return True


def pretrain_view(x, layer_sizes, opts=None, view=0):
    """
    Factorizes x ≈ U_1·V_1, then V_1 ≈ U_2·V_2 and so on, keeping the U's and the deepest V.

    :param x: (required). View data matrix, M x N.
    :param list layer_sizes: (required). k_1, ..., k_m.
    :param seminmf.SemiNmfOptions opts: (optional). Semi-NMF options.
    :param int view: (optional). View index, used in errors and logs.
    """
    opts = opts or seminmf.SemiNmfOptions()
    us, current = [], x

    for layer, size in enumerate(layer_sizes, start=1):
        if size < 1 or size > min(current.shape):
            raise exceptions.LayerSizeError(view, layer, size, current.shape[0])

        result = seminmf.fit_seminmf(current, size, opts)
        logger.info('View %d layer %d (k=%d) pre-trained in %d iterations', view, layer, size, result.iterations)
        us.append(result.U)
        current = result.V

    return us, current


def pretrain(dataset, layer_sizes, opts=None):
    """
    Pre-trains every view of dataset independently.

    :param datasets.MultiViewDataset dataset: (required). Multi-view data.
    :param list layer_sizes: (required). Strictly positive layer sizes k_1, ..., k_m.
    :param seminmf.SemiNmfOptions opts: (optional). Semi-NMF options.
    """
    layers, representations = [], []

    for view, x in enumerate(dataset.views):
        us, v = pretrain_view(x, list(layer_sizes), opts, view=view)
        layers.append(us)
        representations.append(v)

    return LayerStack(layers=layers, representations=representations)
