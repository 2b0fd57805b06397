"""
Objective and block updates of the partially shared deep factorization.

All V rules work with half-gradients: for a block V of the final layer the gradient of the objective
with α, U and W fixed is twice

    α·Φᵀ(Φ·V_m − X) + μ·V·L + β·F,    F = W·(Wᵀ·V_l − Y) restricted to V's rows and labeled columns.

Every rule multiplies V entrywise by sqrt(numerator / denominator) where numerator and denominator
collect the negative and positive parts of that expression. The ``printed`` rule splits whole terms,
the ``majorized`` rule splits each term at its nonnegative building blocks (Φᵀ·Φ, S and D of the
graph, W·Wᵀ, the linear parts), which makes each block step non-increasing in the objective.
"""

import logging
import warnings

import numpy as np

from .. import exceptions, numerics
from .config import VRule

logger = logging.getLogger(__name__)

RESIDUAL_FLOOR = 1e-8
W_ROW_FLOOR = 1e-8
DENOMINATOR_FLOOR = 1e-10


def build_label_matrix(labels, class_count):
    """
    Returns the C x N_l indicator matrix Y with Y[c, n] = 1 iff labels[n] == c.

    :param labels: (required). Class ids of the labeled samples.
    :param int class_count: (required). Number of classes C.
    """
    labels = np.asarray(labels, dtype=np.int64).ravel()

    if labels.size and (labels.min() < 0 or labels.max() >= class_count):
        raise exceptions.LabelError(f'Labels must lie in [0, {class_count}), got [{labels.min()}, {labels.max()}]')

    y = np.zeros((class_count, labels.size))
    y[labels, np.arange(labels.size)] = 1.0
    return y


def objective_terms(state, dataset):
    """
    Returns the objective split into its named parts: weighted reconstruction, graph, regression and
    sparsity (the latter two without the β factor).
    """
    if dataset.view_count != state.view_count or dataset.n_samples != state.factor.n_samples:
        raise exceptions.ShapeMismatchError('objective', (dataset.view_count, dataset.n_samples),
                                            (state.view_count, state.factor.n_samples))

    reconstruction = graph = 0.0

    for p, x in enumerate(dataset.views):
        reconstruction += state.alpha[p] * state.residual_norm(x, p) ** 2
        graph += numerics.trace_quadratic(state.factor.view_representation(p), state.laplacians[p].L)

    regression = numerics.frobenius_norm(state.W.T @ state.factor.labeled() - state.Y) ** 2
    return {
        'reconstruction': reconstruction,
        'graph': graph,
        'regression': regression,
        'sparsity': numerics.l21_norm(state.W),
    }


def objective(state, dataset, cfg):
    """
    Σ_p (α^p·‖X^p − Φ_m^p·V_m^p‖_F² + μ·tr(V_m^p·L^p·V_m^pᵀ)) + β·(‖Wᵀ·V_l − Y‖_F² + γ·‖W‖_{2,1}).

    :param ModelState state: (required). Model state.
    :param MultiViewDataset dataset: (required). Data the state was fitted on.
    :param PsdmfConfig cfg: (required). Supplies μ, β and γ.
    """
    terms = objective_terms(state, dataset)
    value = terms['reconstruction'] + cfg.mu * terms['graph'] + cfg.beta * (terms['regression'] +
                                                                           cfg.gamma * terms['sparsity'])
    return float(numerics.check_finite(np.float64(value), 'objective'))


def view_alpha(residual):
    return 1.0 / (2.0 * max(residual, RESIDUAL_FLOOR))


def update_alpha(state, dataset):
    """
    Returns α^p = 1 / (2·max(‖X^p − Φ_m^p·V_m^p‖_F, 1e-8)) for every view.
    """
    alpha = np.array([view_alpha(state.residual_norm(x, p)) for p, x in enumerate(dataset.views)])
    return numerics.check_finite(alpha, 'update_alpha')


def update_u(state, dataset, view, layer):
    """
    Returns the least-squares U_i^p = (ΦᵀΦ)^-1·Φᵀ·X·Ũᵀ·(ŨŨᵀ)^-1 for the 0-based layer index, where
    Φ = U_1^p...U_{i-1}^p and Ũ = U_{i+1}^p...U_m^p·V_m^p, computed with two linear solves.

    :param ModelState state: (required). Model state.
    :param MultiViewDataset dataset: (required). Data.
    :param int view: (required). View index p.
    :param int layer: (required). 0-based layer index.
    """
    where = f'update_u[p={view},i={layer + 1}]'
    x = dataset.views[view]
    tail = state.tail(view, layer)
    right = x @ tail.T

    if layer > 0:
        phi = state.phi(view, layer)
        left = numerics.solve_spd(phi.T @ phi, phi.T @ right)
        right = left.x
    else:
        left = None

    solution = numerics.solve_spd(tail @ tail.T, right.T)

    if solution.regularized or (left is not None and left.regularized):
        warnings.warn(f'{where}: near-singular Gram matrix, solved with a ridge', exceptions.RegularizationWarning)

    return numerics.check_finite(solution.x.T, where)


def row_weights(w):
    """
    Diagonal of E: e_ii = 1 / (2·max(‖w_i‖, 1e-8)).
    """
    return 1.0 / (2.0 * np.maximum(np.sqrt(np.sum(w * w, axis=1)), W_ROW_FLOOR))


def update_w(v_labeled, y, gamma, w_prev):
    """
    Returns W = (V_l·V_lᵀ + γ·E)^-1·V_l·Yᵀ with E built from the rows of w_prev.

    :param v_labeled: (required). Labeled columns of the stacked representation, K x N_l.
    :param y: (required). Label indicators, C x N_l.
    :param float gamma: (required). Sparsity weight γ.
    :param w_prev: (required). Previous regression matrix, K x C.
    """
    if v_labeled.shape[1] != y.shape[1] or w_prev.shape != (v_labeled.shape[0], y.shape[0]):
        raise exceptions.ShapeMismatchError('update_w', v_labeled.shape, y.shape, w_prev.shape)

    gram = v_labeled @ v_labeled.T + gamma * np.diag(row_weights(w_prev))
    return numerics.check_finite(numerics.solve_spd(gram, v_labeled @ y.T).x, 'update_w')


def w_gradient(v_labeled, y, w, gamma, beta):
    """
    Gradient of β·(‖Wᵀ·V_l − Y‖_F² + γ·‖W‖_{2,1}) at a W without zero rows: 2β·(V_l·(V_lᵀ·W − Yᵀ) + γ·E·W).
    """
    return 2 * beta * (v_labeled @ (v_labeled.T @ w - y.T) + gamma * row_weights(w)[:, None] * w)


def _padded(labeled, n_samples):
    result = np.zeros((labeled.shape[0], n_samples))
    result[:, :labeled.shape[1]] = labeled
    return result


def _regression_residual(state):
    return state.W.T @ state.factor.labeled() - state.Y


def v_gradients(state, dataset, cfg):
    """
    Returns the half-gradients of the objective with respect to every final-layer block, as a
    (specific, common) pair shaped like the factor: specific[p] is K_s x N, common is K_c x N. Their
    labeled and unlabeled column slices are the four block expressions (V_sl^p, V_su^p, V_cl, V_cu).
    """
    factor, n = state.factor, state.factor.n_samples
    f = state.W @ _regression_residual(state)
    k_s = factor.specific_dim
    specific = []
    common = np.zeros_like(factor.common)

    for p, x in enumerate(dataset.views):
        phi = state.phi(p)
        fit = state.alpha[p] * phi.T @ (phi @ factor.view_representation(p) - x)
        specific.append(fit[:k_s] + cfg.mu * factor.specific[p] @ state.laplacians[p].L +
                        cfg.beta * _padded(f[factor.specific_rows(p)], n))
        common += fit[k_s:] + cfg.mu * factor.common @ state.laplacians[p].L

    common += cfg.beta * _padded(f[factor.common_rows()], n)
    return specific, common


def _regression_parts(state, rows, v_block, majorized):
    """
    Returns (numerator, denominator) contributions of the regression term for the W rows of a block,
    on labeled columns only.
    """
    n_labeled = state.factor.n_labeled
    w_block = state.W[rows]
    labeled = v_block[:, :n_labeled]

    if not majorized:
        f = w_block @ _regression_residual(state)
        return numerics.split_neg(f), numerics.split_pos(f)

    gram = w_block @ w_block.T
    # labels minus what the other blocks already explain
    rest = state.Y - (state.W.T @ state.factor.labeled() - w_block.T @ labeled)
    linear = w_block @ rest
    return (numerics.split_neg(gram) @ labeled + numerics.split_pos(linear),
            numerics.split_pos(gram) @ labeled + numerics.split_neg(linear))


def _view_parts(state, x, view, rows_slice, majorized):
    """
    Returns α-weighted (numerator, denominator) contributions of one view's reconstruction term for the
    final-layer rows in rows_slice (the view-specific rows or the common rows of V_m^p).
    """
    alpha = state.alpha[view]
    phi = state.phi(view)
    phi_block = phi[:, rows_slice]
    v_view = state.factor.view_representation(view)

    if not majorized:
        return (alpha * (numerics.split_neg(phi_block.T @ phi @ v_view) + numerics.split_pos(phi_block.T @ x)),
                alpha * (numerics.split_pos(phi_block.T @ phi @ v_view) + numerics.split_neg(phi_block.T @ x)))

    mask = np.ones(v_view.shape[0], dtype=bool)
    mask[rows_slice] = False
    gram = phi_block.T @ phi_block
    linear = phi_block.T @ (x - phi[:, mask] @ v_view[mask])
    v_block = v_view[rows_slice]
    return (alpha * (numerics.split_neg(gram) @ v_block + numerics.split_pos(linear)),
            alpha * (numerics.split_pos(gram) @ v_block + numerics.split_neg(linear)))


def _graph_parts(v_block, laplacians, mu, majorized):
    if not majorized:
        lap = sum(graph.L for graph in laplacians)
        return mu * numerics.split_neg(v_block @ lap), mu * numerics.split_pos(v_block @ lap)

    return (mu * v_block @ sum(graph.S for graph in laplacians),
            mu * v_block @ sum(graph.D for graph in laplacians))


def view_block_terms(state, dataset, cfg, view):
    """
    Returns (numerator, denominator) of the rule for the view-specific block V_s^p. Their difference,
    denominator - numerator, is the half-gradient of the objective with respect to V_s^p.

    :param ModelState state: (required). Model state.
    :param MultiViewDataset dataset: (required). Data.
    :param PsdmfConfig cfg: (required). Supplies μ, β and the rule.
    :param int view: (required). View index p.
    """
    majorized = VRule(cfg.v_rule) is VRule.majorized
    factor = state.factor
    block = factor.specific[view]
    rows = slice(0, factor.specific_dim)

    numerator, denominator = _view_parts(state, dataset.views[view], view, rows, majorized)
    graph_num, graph_den = _graph_parts(block, [state.laplacians[view]], cfg.mu, majorized)
    reg_num, reg_den = _regression_parts(state, factor.specific_rows(view), block, majorized)
    return (numerator + graph_num + cfg.beta * _padded(reg_num, factor.n_samples),
            denominator + graph_den + cfg.beta * _padded(reg_den, factor.n_samples))


def shared_block_terms(state, dataset, cfg):
    """
    Returns (numerator, denominator) of the rule for the common block V_c, reconstruction and graph
    terms summed over all views.

    :param ModelState state: (required). Model state.
    :param MultiViewDataset dataset: (required). Data.
    :param PsdmfConfig cfg: (required). Supplies μ, β and the rule.
    """
    majorized = VRule(cfg.v_rule) is VRule.majorized
    factor = state.factor
    block = factor.common
    rows = slice(factor.specific_dim, factor.specific_dim + factor.common_dim)
    numerator = np.zeros_like(block)
    denominator = np.zeros_like(block)

    for p, x in enumerate(dataset.views):
        num, den = _view_parts(state, x, p, rows, majorized)
        numerator += num
        denominator += den

    graph_num, graph_den = _graph_parts(block, state.laplacians, cfg.mu, majorized)
    reg_num, reg_den = _regression_parts(state, factor.common_rows(), block, majorized)
    numerator += graph_num + cfg.beta * _padded(reg_num, factor.n_samples)
    denominator += graph_den + cfg.beta * _padded(reg_den, factor.n_samples)
    return numerator, denominator


def update_view_block(state, dataset, cfg, view):
    """
    Returns the updated view-specific block V_s^p, its labeled and unlabeled columns computed from one snapshot.
    """
    numerator, denominator = view_block_terms(state, dataset, cfg, view)
    step = numerics.multiplicative_step(state.factor.specific[view], numerator, denominator, DENOMINATOR_FLOOR)
    return numerics.check_finite(step, f'update_v_blocks[specific p={view}]')


def update_shared_block(state, dataset, cfg):
    """
    Returns the updated common block V_c.
    """
    numerator, denominator = shared_block_terms(state, dataset, cfg)
    step = numerics.multiplicative_step(state.factor.common, numerator, denominator, DENOMINATOR_FLOOR)
    return numerics.check_finite(step, 'update_v_blocks[common]')


def check_nonnegative(factor, where):
    if not factor.is_nonnegative():
        raise exceptions.InvariantError(f'negative entries in V after {where}')


def update_v_blocks(state, dataset, cfg):
    """
    Runs one V sweep: every view-specific block in view order, then the common block. Returns the new
    factor and leaves state untouched.

    :param ModelState state: (required). Model state.
    :param MultiViewDataset dataset: (required). Data.
    :param PsdmfConfig cfg: (required). Solver configuration.
    """
    work = state.copy()

    for p in range(work.view_count):
        work.factor.specific[p] = update_view_block(work, dataset, cfg, p)

    work.factor.common = update_shared_block(work, dataset, cfg)
    return work.factor
