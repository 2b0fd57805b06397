"""
Defines the partially shared representation and the full model state.
"""

import dataclasses

import numpy as np

from .. import exceptions, numerics


@dataclasses.dataclass
class PartiallySharedFactor:
    """
    Final-layer representation: one view-specific block per view (K_s x N) and a common block
    (K_c x N). The leading n_labeled columns of every block are the labeled samples.
    """
    specific: list
    common: np.ndarray
    n_labeled: int = 0

    def __post_init__(self):
        n = self.common.shape[1]

        for p, block in enumerate(self.specific):
            if block.shape != self.specific[0].shape or block.shape[1] != n:
                raise exceptions.ShapeMismatchError(f'PartiallySharedFactor view {p}', block.shape, self.common.shape)

        if not 0 <= self.n_labeled <= n:
            raise exceptions.ShapeMismatchError('PartiallySharedFactor n_labeled', (self.n_labeled,), (n,))

    @property
    def view_count(self):
        return len(self.specific)

    @property
    def specific_dim(self):
        return self.specific[0].shape[0]

    @property
    def common_dim(self):
        return self.common.shape[0]

    @property
    def total_dim(self):
        return self.view_count * self.specific_dim + self.common_dim

    @property
    def n_samples(self):
        return self.common.shape[1]

    def view_representation(self, view):
        """
        Returns V_m^p = [V_s^p; V_c].
        """
        return np.vstack([self.specific[view], self.common])

    def stacked(self):
        """
        Returns V = [V_s^1; ...; V_s^P; V_c], K x N.
        """
        return np.vstack(self.specific + [self.common])

    def labeled(self):
        return self.stacked()[:, :self.n_labeled]

    def specific_rows(self, view):
        """
        Returns the slice of V's (and W's) rows held by the specific block of view.
        """
        return slice(view * self.specific_dim, (view + 1) * self.specific_dim)

    def common_rows(self):
        return slice(self.view_count * self.specific_dim, self.total_dim)

    def is_nonnegative(self):
        return all(np.all(block >= 0) for block in self.specific + [self.common])

    def copy(self):
        return PartiallySharedFactor(specific=[block.copy() for block in self.specific],
                                     common=self.common.copy(), n_labeled=self.n_labeled)


@dataclasses.dataclass
class ModelState:
    """
    Everything the optimizer updates plus the fixed inputs it needs: layers[p] is [U_1^p, ..., U_m^p],
    W is the K x C regression matrix, alpha holds the per-view weights, Y the C x N_l label indicators
    and laplacians one GraphLaplacian per view.
    """
    layers: list
    factor: PartiallySharedFactor
    W: np.ndarray
    alpha: np.ndarray
    Y: np.ndarray
    laplacians: list

    @property
    def view_count(self):
        return len(self.layers)

    @property
    def class_count(self):
        return self.Y.shape[0]

    def phi(self, view, depth=None):
        """
        Returns U_1^p ... U_depth^p, the full chain Φ_m by default and the identity for depth 0.
        """
        return numerics.chain_product(self.layers[view][:depth], size=self.layers[view][0].shape[0])

    def tail(self, view, layer):
        """
        Returns U_{layer+2}^p ... U_m^p·V_m^p for the 0-based layer index, V_m^p alone for the last layer.
        """
        result = self.factor.view_representation(view)

        for u in reversed(self.layers[view][layer + 1:]):
            result = u @ result

        return result

    def reconstruction(self, view):
        return self.phi(view) @ self.factor.view_representation(view)

    def residual_norm(self, x, view):
        """
        Returns ‖X^p − U_1^p...U_m^p·V_m^p‖_F.

        :param x: (required). Data matrix of view.
        :param int view: (required). View index.
        """
        return numerics.frobenius_norm(x - self.reconstruction(view))

    def copy(self):
        return ModelState(layers=[[u.copy() for u in us] for us in self.layers], factor=self.factor.copy(),
                          W=self.W.copy(), alpha=self.alpha.copy(), Y=self.Y.copy(), laplacians=self.laplacians)
