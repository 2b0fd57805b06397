"""
Pre-training, initialisation and the alternating optimisation loop.
"""

import logging
import dataclasses

import numpy as np

from .. import exceptions, graph, numerics, pretrain
from . import updates
from .state import ModelState, PartiallySharedFactor

logger = logging.getLogger(__name__)

V_FLOOR = 1e-10
OBJECTIVE_FLOOR = 1e-300


@dataclasses.dataclass
class FitResult:
    """
    Outcome of fit. Unpacks as (state, trace).
    """
    state: ModelState
    trace: list
    alpha_history: list
    iterations: int
    converged: bool

    def __iter__(self):
        return iter((self.state, self.trace))


def build_laplacians(dataset, knn_k):
    return [graph.build_graph(x, knn_k) for x in dataset.views]


def label_matrix(dataset):
    if dataset.class_count is None:
        raise exceptions.LabelError('The class count C is unknown: provide labels or class_count')

    return updates.build_label_matrix(dataset.labeled_truth, dataset.class_count)


def state_from_factors(dataset, cfg, layers, specific, common):
    """
    Assembles a ModelState around given factors with W = 0 and α = 1.

    :param MultiViewDataset dataset: (required). Data, labeled block first.
    :param PsdmfConfig cfg: (required). Supplies the k-NN size.
    :param list layers: (required). layers[p] = [U_1^p, ..., U_m^p].
    :param list specific: (required). V_s^p per view.
    :param common: (required). V_c.
    """
    if len(layers) != dataset.view_count:
        raise exceptions.ShapeMismatchError('state_from_factors', (len(layers),), (dataset.view_count,))

    factor = PartiallySharedFactor(specific=[np.maximum(np.asarray(v, dtype=np.float64), V_FLOOR) for v in specific],
                                   common=np.maximum(np.asarray(common, dtype=np.float64), V_FLOOR),
                                   n_labeled=dataset.n_labeled)
    y = label_matrix(dataset)
    return ModelState(layers=[[np.asarray(u, dtype=np.float64) for u in us] for us in layers], factor=factor,
                      W=np.zeros((factor.total_dim, y.shape[0])), alpha=np.ones(dataset.view_count), Y=y,
                      laplacians=build_laplacians(dataset, cfg.knn_k))


def initial_state(dataset, cfg):
    """
    Pre-trains every view and splits its deepest representation into the view-specific rows and the
    common rows; V_c starts as the mean of the views' common rows.

    :param MultiViewDataset dataset: (required). Data, labeled block first.
    :param PsdmfConfig cfg: (required). Solver configuration.
    """
    k_s, k_c = cfg.partition(dataset.view_count)
    stack = pretrain.pretrain(dataset, cfg.final_layer_sizes(dataset.view_count), cfg.seminmf_options())
    specific = [v[:k_s] for v in stack.representations]
    common = np.mean([v[k_s:k_s + k_c] for v in stack.representations], axis=0)
    return state_from_factors(dataset, cfg, stack.layers, specific, common)


def _check_ordering(residuals, alpha):
    order = np.argsort(residuals, kind='stable')

    if np.any(np.diff(alpha[order]) > 0):
        raise exceptions.InvariantError(f'view weights {alpha.tolist()} do not decrease with residuals {residuals}')


def fit(dataset, cfg, init=None):
    """
    Fits the model: W, then per view α^p, U_1^p..U_m^p and V_s^p, then V_c, repeated until the
    relative change of the objective drops below cfg.tol or cfg.max_iter outer iterations ran.

    :param MultiViewDataset dataset: (required). Data, labeled block first.
    :param PsdmfConfig cfg: (required). Solver configuration.
    :param ModelState init: (optional). Starting state, skips pre-training.
    """
    state = init.copy() if init is not None else initial_state(dataset, cfg)
    trace = [updates.objective(state, dataset, cfg)]
    alpha_history = []
    converged = False
    iteration = 0
    logger.info('Fitting %d views, N=%d (N_l=%d), K_s=%d, K_c=%d, rule=%s', dataset.view_count,
                dataset.n_samples, dataset.n_labeled, state.factor.specific_dim, state.factor.common_dim, cfg.v_rule)

    while iteration < cfg.max_iter:
        iteration += 1
        state.W = numerics.check_finite(updates.update_w(state.factor.labeled(), state.Y, cfg.gamma, state.W),
                                        'update_w')
        residuals = []

        for p, x in enumerate(dataset.views):
            residuals.append(state.residual_norm(x, p))
            state.alpha[p] = numerics.check_finite(np.float64(updates.view_alpha(residuals[-1])),
                                                   f'update_alpha[p={p}]')

            for i in range(len(state.layers[p])):
                state.layers[p][i] = numerics.check_finite(updates.update_u(state, dataset, p, i),
                                                           f'update_u[p={p},i={i + 1}]')

            where = f'update_v_blocks[specific p={p}]'
            state.factor.specific[p] = numerics.check_finite(updates.update_view_block(state, dataset, cfg, p), where)

            if cfg.debug:
                updates.check_nonnegative(state.factor, where)

        state.factor.common = numerics.check_finite(updates.update_shared_block(state, dataset, cfg),
                                                    'update_v_blocks[common]')

        if cfg.debug:
            updates.check_nonnegative(state.factor, 'update_v_blocks[common]')
            _check_ordering(residuals, state.alpha)

        alpha_history.append(state.alpha.tolist())
        trace.append(updates.objective(state, dataset, cfg))
        change = abs(trace[-2] - trace[-1]) / max(abs(trace[-2]), OBJECTIVE_FLOOR)
        logger.debug('Iteration %d: objective %.10g, relative change %.3e, alpha %s', iteration, trace[-1], change,
                     alpha_history[-1])

        if change < cfg.tol:
            converged = True
            break

    logger.info('Fit stopped after %d iterations (converged=%s), objective %.6g', iteration, converged, trace[-1])
    return FitResult(state=state, trace=trace, alpha_history=alpha_history, iterations=iteration,
                     converged=converged)


def predict_labels(state):
    """
    Returns argmax_c (Wᵀ·v_i)_c for every sample column, ties going to the lowest class id.

    :param ModelState state: (required). Fitted state.
    """
    return np.argmax(state.W.T @ state.factor.stacked(), axis=0)
