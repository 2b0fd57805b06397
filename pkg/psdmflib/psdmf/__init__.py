"""
The partially shared semi-supervised deep matrix factorization optimizer.
"""

from .config import PsdmfConfig, VRule
from .state import PartiallySharedFactor, ModelState
from .updates import (build_label_matrix, objective, objective_terms, update_alpha, update_u, update_w,
                      update_v_blocks, update_view_block, update_shared_block, view_block_terms,
                      shared_block_terms, v_gradients, w_gradient)
from .solver import FitResult, fit, initial_state, state_from_factors, predict_labels
