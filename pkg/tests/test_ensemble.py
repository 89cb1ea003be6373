import math

import numpy as np
import pytest
from conftest import make_clusters

from liuboost.data import Dataset
from liuboost.ensemble import (BoostModel, classify, compute_alpha,
                               decision_score, train_liuboost,
                               train_rusboost)
from liuboost.locality import assign_weights
from liuboost.tree import TreeParams, fit_tree


class TestComputeAlpha:
    def test_balanced_mass_gives_zero(self):
        assert compute_alpha(0.5, 0.5) == 0.0

    def test_example_value(self):
        assert compute_alpha(0.5, 0.1) == pytest.approx(
            0.5 * math.log(1.4 / 0.6))

    def test_unit_cost_reduction(self):
        for eps in np.linspace(0.05, 0.45, 9):
            classical = 0.5 * math.log((1 - eps) / eps)
            assert compute_alpha(1 - eps, eps) == pytest.approx(
                classical, abs=1e-12)

    def test_perfect_round_is_finite_and_large(self):
        alpha = compute_alpha(1.0, 0.0)
        assert math.isfinite(alpha) and alpha > 10

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            compute_alpha(-0.1, 0.5)
        with pytest.raises(ValueError):
            compute_alpha(0.5, -0.1)


class TestTraining:
    def test_separable_toy_perfect_fit(self, separable_ds):
        model = train_liuboost(separable_ds, T=5, k=3, rng=0)
        assert model.trained_iterations == 5
        assert all(a > 0 for a in model.alphas)
        pred = classify(model, separable_ds.features)
        assert (pred == separable_ds.labels).all()

    def test_rusboost_equals_unit_cost_liuboost(self, noisy_ds):
        # k=1 forces every locality cost to 1 (either 1/1 or delta=1), so
        # the cost-sensitive loop must coincide with the baseline exactly
        rus = train_rusboost(noisy_ds, T=8, rng=123)
        liu = train_liuboost(noisy_ds, T=8, k=1, delta=1.0, rng=123)
        assert rus.alphas == liu.alphas
        np.testing.assert_equal([t.to_dict() for t in rus.trees],
                                [t.to_dict() for t in liu.trees])

    def test_history_replays_weight_update(self, noisy_ds):
        ds = noisy_ds
        model = train_liuboost(ds, T=6, k=5, delta=1.0, rng=7,
                               record_history=True,
                               tree_params=TreeParams(max_depth=2))
        assert model.trained_iterations == 6
        cv = assign_weights(ds, k=5, delta=1.0)
        m = ds.n_instances
        D_prev = np.full(m, 1.0 / m)
        for rec, tree, alpha in zip(model.history, model.trees, model.alphas):
            pred = tree.predict_many(ds.features)
            mis = pred != ds.labels
            assert rec.mis_sum == pytest.approx(
                float((D_prev[mis] * cv.weight_plus[mis]).sum()), abs=1e-12)
            assert rec.cor_sum == pytest.approx(
                float((D_prev[~mis] * cv.weight_minus[~mis]).sum()), abs=1e-12)
            assert rec.epsilon == pytest.approx(float(D_prev[mis].sum()),
                                                abs=1e-12)
            assert alpha == pytest.approx(
                compute_alpha(rec.cor_sum, rec.mis_sum), abs=1e-12)
            cost = np.where(mis, cv.weight_plus, cv.weight_minus)
            expected = D_prev * np.exp(-alpha * ds.labels * pred * cost)
            expected /= expected.sum()
            np.testing.assert_allclose(rec.distribution, expected, atol=1e-12)
            D_prev = rec.distribution

    def test_round_one_update_ordering_follows_cost(self, noisy_ds):
        # with a uniform prior, misclassified instances end round 1 ordered
        # by weight_plus: higher cost => strictly larger posterior weight
        model = train_liuboost(noisy_ds, T=1, k=5, rng=11,
                               record_history=True,
                               tree_params=TreeParams(max_depth=1))
        cv = assign_weights(noisy_ds, k=5)
        pred = model.trees[0].predict_many(noisy_ds.features)
        mis = np.flatnonzero(pred != noisy_ds.labels)
        assert len(mis) >= 2
        D = model.history[0].distribution
        order = mis[np.argsort(cv.weight_plus[mis], kind="stable")]
        wp, dd = cv.weight_plus[order], D[order]
        strict = wp[1:] > wp[:-1]
        assert np.all(dd[1:][strict] > dd[:-1][strict])

    def test_distribution_invariants(self, noisy_ds):
        model = train_rusboost(noisy_ds, T=10, rng=3, record_history=True,
                               tree_params=TreeParams(max_depth=2))
        for rec in model.history:
            assert rec.distribution.sum() == pytest.approx(1.0, abs=1e-9)
            assert np.all(rec.distribution >= 0)

    def test_deterministic_given_seed(self, noisy_ds):
        a = train_liuboost(noisy_ds, T=5, rng=99)
        b = train_liuboost(noisy_ds, T=5, rng=99)
        assert a.to_json() == b.to_json()
        c = train_liuboost(noisy_ds, T=5, rng=100)
        assert a.to_json() != c.to_json()

    def test_retry_budget_exhaustion(self):
        # two identical points with opposite labels: every weak learner is
        # a coin flip, alpha is never positive, training must give up
        ds = Dataset(features=np.array([[1.0], [1.0]]),
                     labels=np.array([1, -1]), feature_names=("x",))
        with pytest.warns(UserWarning, match="no positive-alpha"):
            model = train_rusboost(ds, T=3, rng=0)
        assert model.trained_iterations == 0
        assert model.retries_exhausted
        with pytest.raises(ValueError, match="no trained stages"):
            decision_score(model, ds.features)

    def test_no_undersampling_path(self, noisy_ds):
        model = train_liuboost(noisy_ds, T=3, rng=0, undersample=False,
                               tree_params=TreeParams(max_depth=2))
        assert model.trained_iterations == 3
        assert model.config["undersample"] is False

    def test_alphas_finite_even_with_perfect_rounds(self, separable_ds):
        model = train_liuboost(separable_ds, T=4, k=1, rng=0,
                               undersample=False)
        assert model.trained_iterations == 4
        assert all(np.isfinite(model.alphas))

    def test_rounds_validation(self, separable_ds):
        with pytest.raises(ValueError):
            train_liuboost(separable_ds, T=0)
        with pytest.raises(ValueError):
            train_rusboost(separable_ds, T=0)


def constant_leaf_tree(label: int):
    X = np.zeros((2, 1))
    return fit_tree(X, np.array([label, label], dtype=np.int64), np.ones(2))


class TestScoring:
    def test_tie_resolves_to_majority(self):
        model = BoostModel(alphas=(1.0, 1.0),
                           trees=(constant_leaf_tree(1),
                                  constant_leaf_tree(-1)),
                           config={})
        x = np.array([0.0])
        assert decision_score(model, x) == 0.0
        assert classify(model, x) == -1

    def test_single_stage_score(self):
        model = BoostModel(alphas=(0.7,), trees=(constant_leaf_tree(1),),
                           config={})
        assert decision_score(model, np.array([5.0])) == pytest.approx(0.7)

    def test_score_is_alpha_weighted_vote(self, noisy_ds):
        model = train_rusboost(noisy_ds, T=6, rng=1,
                               tree_params=TreeParams(max_depth=2))
        X = noisy_ds.features[:20]
        expected = sum(a * t.predict_many(X)
                       for a, t in zip(model.alphas, model.trees))
        np.testing.assert_allclose(decision_score(model, X), expected,
                                   atol=1e-12)
        np.testing.assert_array_equal(
            classify(model, X), np.where(expected > 0, 1, -1))

    def test_vector_and_matrix_agree(self, noisy_ds):
        model = train_rusboost(noisy_ds, T=3, rng=2)
        x = noisy_ds.features[0]
        assert decision_score(model, x) == pytest.approx(
            decision_score(model, x[None, :])[0])


class TestSerialization:
    def test_json_round_trip(self, noisy_ds):
        model = train_liuboost(noisy_ds, T=4, rng=5)
        back = BoostModel.from_json(model.to_json())
        assert back.alphas == model.alphas
        np.testing.assert_array_equal(
            decision_score(back, noisy_ds.features),
            decision_score(model, noisy_ds.features))

    def test_schema_version_checked(self, noisy_ds):
        d = train_liuboost(noisy_ds, T=2, rng=5).to_dict()
        d["schema_version"] = 999
        with pytest.raises(ValueError, match="schema"):
            BoostModel.from_dict(d)
