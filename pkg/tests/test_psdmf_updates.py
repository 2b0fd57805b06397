import itertools
import warnings

import numpy as np

from . import BasePsdmfTestCase

from psdmflib import exceptions, graph, numerics, psdmf
from psdmflib.datasets import MultiViewDataset


class LabelMatrixTestCase(BasePsdmfTestCase):
    def test_small_example(self):
        self.assertTrue(np.array_equal(psdmf.build_label_matrix([0, 1, 0], 2), [[1, 0, 1], [0, 1, 0]]))

    def test_single_class(self):
        y = psdmf.build_label_matrix([0, 0, 0, 0], 3)
        self.assertTrue(np.array_equal(y[0], np.ones(4)))
        self.assertEqual(y[1:].sum(), 0)

    def test_columns_are_indicators(self):
        labels = self.rng.integers(0, 5, size=40)
        y = psdmf.build_label_matrix(labels, 5)
        self.assertTrue(np.array_equal(y.sum(axis=0), np.ones(40)))
        self.assertTrue(np.array_equal(y.argmax(axis=0), labels))

    def test_out_of_range(self):
        self.assertRaises(exceptions.LabelError, lambda: psdmf.build_label_matrix([0, 3], 3))
        self.assertRaises(exceptions.LabelError, lambda: psdmf.build_label_matrix([-1], 3))

    def test_no_labels(self):
        self.assertEqual(psdmf.build_label_matrix([], 3).shape, (3, 0))


class ObjectiveTestCase(BasePsdmfTestCase):
    cfg = psdmf.PsdmfConfig(mu=0.3, beta=0.7, gamma=0.4)

    def loop_objective(self, state, dataset, cfg):
        total = 0.0

        for p, x in enumerate(dataset.views):
            phi = state.phi(p)
            v = state.factor.view_representation(p)
            lap = state.laplacians[p].L
            rows, cols = x.shape

            for i in range(rows):
                for j in range(cols):
                    approx = sum(phi[i, k] * v[k, j] for k in range(v.shape[0]))
                    total += state.alpha[p] * (x[i, j] - approx) ** 2

            for k in range(v.shape[0]):
                for i in range(cols):
                    for j in range(cols):
                        total += cfg.mu * v[k, i] * lap[i, j] * v[k, j]

        v_l = state.factor.labeled()
        regression = 0.0

        for c in range(state.Y.shape[0]):
            for n in range(v_l.shape[1]):
                regression += (sum(state.W[k, c] * v_l[k, n] for k in range(v_l.shape[0])) - state.Y[c, n]) ** 2

        sparsity = sum(np.sqrt(sum(value ** 2 for value in row)) for row in state.W)
        return total + cfg.beta * (regression + cfg.gamma * sparsity)

    def test_matches_scalar_loops(self):
        for hidden in ((), (3,)):
            dataset = self.random_dataset(view_dims=(5, 4), n_samples=8, n_labeled=3)
            state = self.random_state(dataset, specific_dim=1, common_dim=2, hidden=hidden)
            expected = self.loop_objective(state, dataset, self.cfg)
            self.assertAlmostEqual(psdmf.objective(state, dataset, self.cfg), expected, delta=1e-10 * abs(expected))

    def test_perfect_reconstruction_is_zero(self):
        dataset = self.random_dataset(n_labeled=0)
        state = self.random_state(dataset)
        dataset = dataset.replace(views=[state.reconstruction(p) for p in range(2)])
        state.W[:] = 0
        cfg = psdmf.PsdmfConfig(mu=0)
        self.assertAlmostEqual(psdmf.objective(state, dataset, cfg), 0.0, places=20)

    def test_reconstruction_term_isolated(self):
        dataset = self.random_dataset()
        state = self.random_state(dataset)
        state.alpha[:] = 1
        cfg = psdmf.PsdmfConfig(mu=0, beta=0)
        expected = sum(np.sum((x - state.reconstruction(p)) ** 2) for p, x in enumerate(dataset.views))
        self.assertAlmostEqual(psdmf.objective(state, dataset, cfg), expected, delta=1e-10 * expected)

    def test_terms(self):
        dataset = self.random_dataset()
        state = self.random_state(dataset)
        terms = psdmf.objective_terms(state, dataset)
        self.assertEqual(set(terms), {'reconstruction', 'graph', 'regression', 'sparsity'})
        self.assertEqual(terms['sparsity'], numerics.l21_norm(state.W))

    def test_shape_mismatch(self):
        dataset = self.random_dataset()
        state = self.random_state(dataset)
        other = self.random_dataset(n_samples=21)
        self.assertRaises(exceptions.ShapeMismatchError, lambda: psdmf.objective(state, other, self.cfg))


class AlphaTestCase(BasePsdmfTestCase):
    def state_with_residuals(self, residuals):
        views = []

        for r in residuals:
            x = np.zeros((3, 6))
            x[0, 0] = r
            views.append(x)

        dataset = MultiViewDataset(views=views, truth=np.arange(6) % 2)
        state = self.random_state(dataset)

        for us in state.layers:
            us[0][:] = 0

        return state, dataset

    def test_half_residual_gives_one(self):
        state, dataset = self.state_with_residuals([0.5])
        self.assertAlmostEqual(psdmf.update_alpha(state, dataset)[0], 1.0)

    def test_better_fit_weighted_higher(self):
        state, dataset = self.state_with_residuals([0.3, 0.6])
        alpha = psdmf.update_alpha(state, dataset)
        self.assertAlmostEqual(alpha[0] / alpha[1], 2.0)

    def test_zero_residual_is_capped(self):
        state, dataset = self.state_with_residuals([0.0, 1.0])
        alpha = psdmf.update_alpha(state, dataset)
        self.assertEqual(alpha[0], 1 / (2 * 1e-8))
        self.assertTrue(np.all(np.isfinite(alpha)))

    def test_order_follows_residuals(self):
        state, dataset = self.state_with_residuals([2.0, 0.1, 0.7])
        alpha = psdmf.update_alpha(state, dataset)
        self.assertEqual(list(np.argsort(-alpha)), [1, 2, 0])


class UpdateUTestCase(BasePsdmfTestCase):
    def test_recovers_basis(self):
        dataset = self.random_dataset(view_dims=(7,), n_samples=20)
        state = self.random_state(dataset, specific_dim=2, common_dim=2)
        target = self.rng.standard_normal((7, 4))
        dataset = dataset.replace(views=[target @ state.factor.view_representation(0)])
        self.assertAllClose(psdmf.update_u(state, dataset, 0, 0), target, rtol=1e-8, atol=1e-8)

    def test_first_layer_formula(self):
        dataset = self.random_dataset(view_dims=(7,))
        state = self.random_state(dataset, hidden=(3,))
        tail = state.layers[0][1] @ state.factor.view_representation(0)
        x = dataset.views[0]
        expected = x @ tail.T @ np.linalg.inv(tail @ tail.T)

        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            u = psdmf.update_u(state, dataset, 0, 0)

        self.assertAllClose(u, expected, rtol=1e-8, atol=1e-10)
        self.assertFalse([w for w in caught if issubclass(w.category, exceptions.RegularizationWarning)])

    def test_rank_deficient_tail_warns(self):
        # a 5-row tail built from a rank 4 representation has a singular Gram matrix
        dataset = self.random_dataset(view_dims=(7,))
        state = self.random_state(dataset, hidden=(5,))
        state.layers[0][1][4] = state.layers[0][1][0]
        before = state.residual_norm(dataset.views[0], 0)

        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            state.layers[0][0] = psdmf.update_u(state, dataset, 0, 0)

        regularized = [w for w in caught if issubclass(w.category, exceptions.RegularizationWarning)]
        self.assertEqual(len(regularized), 1)
        self.assertIn('update_u[p=0,i=1]', str(regularized[0].message))
        self.assertTrue(np.all(np.isfinite(state.layers[0][0])))
        self.assertLessEqual(state.residual_norm(dataset.views[0], 0), before * (1 + 1e-8))

    def oracle_error(self, x, phi, tail):
        """
        Least-squares optimum of ‖X − Φ·U·T‖² over U via the vectorized normal problem.
        """
        design = np.kron(tail.T, phi)
        coef = np.linalg.lstsq(design, x.reshape(-1, order='F'), rcond=None)[0]
        u = coef.reshape(phi.shape[1], tail.shape[0], order='F')
        return float(np.sum((x - phi @ u @ tail) ** 2))

    def test_matches_least_squares_oracle(self):
        for trial in range(20):
            rng = np.random.default_rng(trial)
            dataset = self.random_dataset(view_dims=(6, 5), rng=rng)
            state = self.random_state(dataset, hidden=(4, 3), rng=rng)

            for p, layer in itertools.product(range(2), range(3)):
                x = dataset.views[p]
                phi = state.phi(p, layer)
                tail = state.tail(p, layer)
                state.layers[p][layer] = psdmf.update_u(state, dataset, p, layer)
                error = state.residual_norm(x, p) ** 2
                expected = self.oracle_error(x, phi, tail)
                self.assertAlmostEqual(error, expected, delta=1e-8 * max(expected, 1e-12))

    def test_descent(self):
        for trial in range(500):
            rng = np.random.default_rng(trial)
            dataset = self.random_dataset(view_dims=(6, 5), rng=rng)
            state = self.random_state(dataset, hidden=(3,), rng=rng)
            p, layer = trial % 2, (trial // 2) % 2
            before = state.residual_norm(dataset.views[p], p)
            state.layers[p][layer] = psdmf.update_u(state, dataset, p, layer)
            self.assertLessEqual(state.residual_norm(dataset.views[p], p), before * (1 + 1e-10))


class UpdateWTestCase(BasePsdmfTestCase):
    def test_identity_representation(self):
        y = psdmf.build_label_matrix([0, 1, 2, 1], 3)
        w = psdmf.update_w(np.eye(4), y, 0.0, np.ones((4, 3)))
        self.assertAllClose(w, y.T, atol=1e-12)

    def test_exact_regression(self):
        v_l = self.rng.standard_normal((5, 5)) + 3 * np.eye(5)
        y = psdmf.build_label_matrix([0, 1, 2, 0, 1], 3)
        w = psdmf.update_w(v_l, y, 0.0, np.ones((5, 3)))
        self.assertAllClose(w.T @ v_l, y, atol=1e-8)

    def test_stationarity(self):
        for trial in range(50):
            rng = np.random.default_rng(trial)
            v_l = rng.random((6, 5))
            y = psdmf.build_label_matrix(rng.integers(0, 3, size=5), 3)
            w_prev = rng.standard_normal((6, 3))
            gamma = 0.1 + rng.random()
            w = psdmf.update_w(v_l, y, gamma, w_prev)
            e = np.diag(1 / (2 * np.linalg.norm(w_prev, axis=1)))
            residual = np.linalg.norm(v_l @ (v_l.T @ w - y.T) + gamma * e @ w)
            self.assertLessEqual(residual, 1e-6 * (1 + np.linalg.norm(v_l @ y.T)))

    def test_zero_rows_are_floored(self):
        w = psdmf.update_w(self.rng.random((4, 3)), psdmf.build_label_matrix([0, 1, 0], 2), 10.0, np.zeros((4, 2)))
        self.assertTrue(np.all(np.isfinite(w)))
        self.assertLess(np.abs(w).max(), 1e-6)

    def test_shape_mismatch(self):
        self.assertRaises(exceptions.ShapeMismatchError,
                          lambda: psdmf.update_w(np.ones((4, 3)), np.ones((2, 3)), 1.0, np.ones((3, 2))))


class GradientTestCase(BasePsdmfTestCase):
    cfg = psdmf.PsdmfConfig(mu=0.3, beta=0.7, gamma=0.4)
    step = 1e-6

    def finite_difference(self, state, dataset, block):
        grad = np.zeros_like(block)

        for index in np.ndindex(block.shape):
            original = block[index]
            block[index] = original + self.step
            plus = psdmf.objective(state, dataset, self.cfg)
            block[index] = original - self.step
            minus = psdmf.objective(state, dataset, self.cfg)
            block[index] = original
            grad[index] = (plus - minus) / (2 * self.step)

        return grad

    def test_v_blocks(self):
        for trial in range(50):
            rng = np.random.default_rng(trial)
            dataset = self.random_dataset(view_dims=(6, 5), rng=rng)
            state = self.random_state(dataset, hidden=() if trial % 2 else (3,), rng=rng)
            specific, common = psdmf.v_gradients(state, dataset, self.cfg)
            n_l = dataset.n_labeled

            for p in range(2):
                numeric = self.finite_difference(state, dataset, state.factor.specific[p])
                self.assertRelativeError(2 * specific[p][:, :n_l], numeric[:, :n_l], 1e-5)
                self.assertRelativeError(2 * specific[p][:, n_l:], numeric[:, n_l:], 1e-5)

            numeric = self.finite_difference(state, dataset, state.factor.common)
            self.assertRelativeError(2 * common[:, :n_l], numeric[:, :n_l], 1e-5)
            self.assertRelativeError(2 * common[:, n_l:], numeric[:, n_l:], 1e-5)

    def test_w(self):
        for trial in range(50):
            rng = np.random.default_rng(trial)
            dataset = self.random_dataset(view_dims=(6, 5), rng=rng)
            state = self.random_state(dataset, rng=rng)
            analytic = psdmf.w_gradient(state.factor.labeled(), state.Y, state.W, self.cfg.gamma, self.cfg.beta)
            self.assertRelativeError(analytic, self.finite_difference(state, dataset, state.W), 1e-4)

    def test_rule_terms_split_the_gradient(self):
        for rule in ('majorized', 'printed'):
            cfg = self.cfg.replace(v_rule=rule)
            dataset = self.random_dataset()
            state = self.random_state(dataset)
            specific, common = psdmf.v_gradients(state, dataset, cfg)

            for p in range(2):
                numerator, denominator = psdmf.view_block_terms(state, dataset, cfg, p)
                self.assertTrue(np.all(numerator >= 0) and np.all(denominator >= 0))
                self.assertAllClose(denominator - numerator, specific[p], rtol=1e-9, atol=1e-8)

            numerator, denominator = psdmf.shared_block_terms(state, dataset, cfg)
            self.assertTrue(np.all(numerator >= 0) and np.all(denominator >= 0))
            self.assertAllClose(denominator - numerator, common, rtol=1e-9, atol=1e-8)


class UpdateVTestCase(BasePsdmfTestCase):
    cfg = psdmf.PsdmfConfig(mu=0.3, beta=0.7, gamma=0.4)

    def test_sweep_does_not_increase_objective(self):
        for trial in range(500):
            rng = np.random.default_rng(trial)
            dataset = self.random_dataset(view_dims=(6, 5), n_samples=20, n_labeled=4, rng=rng)
            state = self.random_state(dataset, specific_dim=2, common_dim=2, rng=rng)
            before = psdmf.objective(state, dataset, self.cfg)
            state.factor = psdmf.update_v_blocks(state, dataset, self.cfg)
            self.assertTrue(state.factor.is_nonnegative())
            self.assertLessEqual(psdmf.objective(state, dataset, self.cfg), before * (1 + 1e-6))

    def test_each_block_step_does_not_increase_objective(self):
        for trial in range(100):
            rng = np.random.default_rng(trial)
            dataset = self.random_dataset(rng=rng)
            state = self.random_state(dataset, hidden=(3,), rng=rng)
            value = psdmf.objective(state, dataset, self.cfg)

            for p in range(2):
                state.factor.specific[p] = psdmf.update_view_block(state, dataset, self.cfg, p)
                current = psdmf.objective(state, dataset, self.cfg)
                self.assertLessEqual(current, value * (1 + 1e-6))
                value = current

            state.factor.common = psdmf.update_shared_block(state, dataset, self.cfg)
            self.assertLessEqual(psdmf.objective(state, dataset, self.cfg), value * (1 + 1e-6))

    def test_unregularized_single_view_is_semi_nmf_like(self):
        cfg = psdmf.PsdmfConfig(mu=0, beta=0)

        for rule in ('majorized', 'printed'):
            for trial in range(200):
                rng = np.random.default_rng(trial)
                dataset = MultiViewDataset(views=[rng.random((6, 8))], truth=np.arange(8) % 2)
                state = self.random_state(dataset, specific_dim=1, common_dim=1, knn_k=2, rng=rng)
                state.layers[0][0] = np.abs(state.layers[0][0])
                cfg = cfg.replace(v_rule=rule)
                before = psdmf.objective(state, dataset, cfg)
                state.factor = psdmf.update_v_blocks(state, dataset, cfg)
                self.assertTrue(state.factor.is_nonnegative())
                self.assertLessEqual(psdmf.objective(state, dataset, cfg), before * (1 + 1e-6))

    def test_printed_rule_keeps_nonnegativity(self):
        cfg = self.cfg.replace(v_rule='printed')

        for trial in range(50):
            rng = np.random.default_rng(trial)
            dataset = self.random_dataset(rng=rng)
            state = self.random_state(dataset, rng=rng)
            factor = psdmf.update_v_blocks(state, dataset, cfg)
            self.assertTrue(factor.is_nonnegative())
            self.assertTrue(np.all(np.isfinite(factor.stacked())))

    def test_sweep_leaves_state_untouched(self):
        dataset = self.random_dataset()
        state = self.random_state(dataset)
        stacked = state.factor.stacked().copy()
        factor = psdmf.update_v_blocks(state, dataset, self.cfg)
        self.assertTrue(np.array_equal(state.factor.stacked(), stacked))
        self.assertFalse(np.array_equal(factor.stacked(), stacked))

    def test_stationary_point_is_fixed(self):
        # with every term switched off but the graph, a constant representation has zero gradient
        cfg = psdmf.PsdmfConfig(mu=1.0, beta=0.0)
        dataset = self.random_dataset(n_labeled=0)
        state = self.random_state(dataset)
        state.alpha[:] = 0.0
        state.factor.specific = [np.full_like(block, 0.5) for block in state.factor.specific]
        state.factor.common = np.full_like(state.factor.common, 0.5)
        factor = psdmf.update_v_blocks(state, dataset, cfg)
        self.assertAllClose(factor.stacked(), state.factor.stacked(), rtol=1e-9)

    def test_state_laplacians_follow_views(self):
        dataset = self.random_dataset()
        state = self.random_state(dataset, knn_k=4)
        self.assertEqual([g.k for g in state.laplacians], [4, 4])
        self.assertTrue(np.array_equal(state.laplacians[0].L, graph.build_graph(dataset.views[0], 4).L))
