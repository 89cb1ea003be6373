"""Boosting core: cost-sensitive undersampled boosting and the RUSBoost
baseline, sharing one training loop.

Per round: draw a balanced subsample, fit a tree on it using the current
distribution D as sample weights, then account cost-weighted correct/
incorrect mass over ALL training instances (not just the subsample) to
set the stage coefficient alpha and the weight update.  Rounds whose
alpha is non-positive are discarded and redrawn.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .locality import assign_weights
from .resample import random_undersample
from .tree import DecisionTree, TreeParams, fit_tree

SCHEMA_VERSION = 1
MAX_EXPONENT = 35.0  # clamp |alpha * cost| before exponentiation
MAX_CONSECUTIVE_RETRIES = 10


@dataclass
class RoundRecord:
    """Per-round training trace (kept when record_history=True)."""

    mis_sum: float
    cor_sum: float
    epsilon: float  # plain weighted error, no costs
    alpha: float
    distribution: np.ndarray  # D after update + normalization


@dataclass(frozen=True)
class BoostModel:
    """Ordered stages (alpha_t, tree_t) with a config snapshot."""

    alphas: tuple[float, ...]
    trees: tuple[DecisionTree, ...]
    config: dict
    retries_exhausted: bool = False
    history: tuple[RoundRecord, ...] = ()

    @property
    def trained_iterations(self) -> int:
        return len(self.alphas)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "alphas": list(self.alphas),
            "trees": [t.to_dict() for t in self.trees],
            "config": self.config,
            "retries_exhausted": self.retries_exhausted,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "BoostModel":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported model schema: {d.get('schema_version')}")
        return cls(
            alphas=tuple(d["alphas"]),
            trees=tuple(DecisionTree.from_dict(t) for t in d["trees"]),
            config=d["config"],
            retries_exhausted=d["retries_exhausted"],
        )

    @classmethod
    def from_json(cls, text: str) -> "BoostModel":
        return cls.from_dict(json.loads(text))


def compute_alpha(cor_sum: float, mis_sum: float) -> float:
    """Stage coefficient: 0.5 * ln((1 + cor_sum - mis_sum) / (1 - cor_sum + mis_sum)).

    Positive iff cor_sum > mis_sum.  With unit costs (cor_sum = 1 - eps,
    mis_sum = eps) this reduces to the classical 0.5 * ln((1-eps)/eps).
    """
    if cor_sum < 0 or mis_sum < 0:
        raise ValueError("cor_sum and mis_sum must be nonnegative")
    num = 1.0 + cor_sum - mis_sum
    den = 1.0 - cor_sum + mis_sum
    assert num > -1e-12 and den > -1e-12, "requires cor_sum + mis_sum <= 1"
    # den hits 0 exactly when every instance is correct with unit cost
    # (a perfect round); clamp instead of overflowing to +inf
    return 0.5 * math.log(max(num, 1e-12) / max(den, 1e-12))


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _boost_loop(X, y, weight_plus, weight_minus, T, rng, tree_params,
                target_majority_fraction, undersample, config,
                record_history=False) -> BoostModel:
    m = len(y)
    D = np.full(m, 1.0 / m)
    alphas: list[float] = []
    trees: list[DecisionTree] = []
    history: list[RoundRecord] = []
    retries_exhausted = False

    t = 0
    retries = 0
    while t < T:
        if undersample:
            sample = random_undersample(y, target_majority_fraction, rng).indices
        else:
            sample = np.arange(m)
        tree = fit_tree(X[sample], y[sample], D[sample], tree_params)
        pred = tree.predict_many(X)
        mis = pred != y
        mis_sum = float((D[mis] * weight_plus[mis]).sum())
        cor_sum = float((D[~mis] * weight_minus[~mis]).sum())
        alpha = compute_alpha(cor_sum, mis_sum)
        if alpha <= 0:
            retries += 1
            if retries > MAX_CONSECUTIVE_RETRIES:
                warnings.warn(
                    f"no positive-alpha weak learner found after "
                    f"{MAX_CONSECUTIVE_RETRIES} retries in round {t + 1}; "
                    f"stopping with {len(alphas)} stages", stacklevel=3)
                retries_exhausted = True
                break
            continue
        retries = 0
        epsilon = float(D[mis].sum())  # cost-free weighted error under current D
        cost = np.where(mis, weight_plus, weight_minus)
        exponent = np.clip(-alpha * y * pred * cost, -MAX_EXPONENT, MAX_EXPONENT)
        D = D * np.exp(exponent)
        D = D / D.sum()
        alphas.append(alpha)
        trees.append(tree)
        if record_history:
            history.append(RoundRecord(mis_sum=mis_sum, cor_sum=cor_sum,
                                       epsilon=epsilon, alpha=alpha,
                                       distribution=D.copy()))
        t += 1

    return BoostModel(
        alphas=tuple(alphas),
        trees=tuple(trees),
        config=config,
        retries_exhausted=retries_exhausted,
        history=tuple(history),
    )


def train_liuboost(ds, T: int = 10, k: int = 5, delta: float = 1.0,
                   rng=0, tree_params: TreeParams = TreeParams(),
                   target_majority_fraction: float = 0.5,
                   undersample: bool = True,
                   record_history: bool = False) -> BoostModel:
    """Train the cost-sensitive undersampled ensemble on a Dataset.

    Locality costs are computed once on the full training split before the
    boosting loop begins.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    rng = _as_rng(rng)
    cv = assign_weights(ds, k=k, delta=delta)
    config = {
        "algorithm": "liuboost", "T": T, "k": k, "delta": delta,
        "target_majority_fraction": target_majority_fraction,
        "undersample": undersample,
        "tree_params": {"max_depth": tree_params.max_depth,
                        "min_leaf_weight": tree_params.min_leaf_weight,
                        "min_gain": tree_params.min_gain},
    }
    return _boost_loop(ds.features, ds.labels, cv.weight_plus, cv.weight_minus,
                       T, rng, tree_params, target_majority_fraction,
                       undersample, config, record_history)


def train_rusboost(ds, T: int = 10, rng=0,
                   tree_params: TreeParams = TreeParams(),
                   target_majority_fraction: float = 0.5,
                   undersample: bool = True,
                   record_history: bool = False) -> BoostModel:
    """Classical undersampled AdaBoost: the shared loop with unit costs."""
    if T < 1:
        raise ValueError("T must be >= 1")
    rng = _as_rng(rng)
    m = ds.n_instances
    ones = np.ones(m)
    config = {
        "algorithm": "rusboost", "T": T,
        "target_majority_fraction": target_majority_fraction,
        "undersample": undersample,
        "tree_params": {"max_depth": tree_params.max_depth,
                        "min_leaf_weight": tree_params.min_leaf_weight,
                        "min_gain": tree_params.min_gain},
    }
    return _boost_loop(ds.features, ds.labels, ones, ones, T, rng,
                       tree_params, target_majority_fraction, undersample,
                       config, record_history)


def decision_score(model: BoostModel, X: np.ndarray) -> np.ndarray:
    """Continuous vote margin g(x) = sum_t alpha_t * h_t(x).

    Accepts a single feature vector or an (n, d) matrix; returns a scalar
    array or an (n,) array respectively.
    """
    if model.trained_iterations == 0:
        raise ValueError("model has no trained stages")
    X = np.asarray(X, dtype=np.float64)
    single = X.ndim == 1
    if single:
        X = X[None, :]
    g = np.zeros(X.shape[0])
    for alpha, tree in zip(model.alphas, model.trees):
        g += alpha * tree.predict_many(X)
    return g[0] if single else g


def classify(model: BoostModel, X: np.ndarray) -> np.ndarray:
    """sign(g) with ties (g == 0) resolved to the majority class (-1)."""
    g = decision_score(model, X)
    return np.where(np.asarray(g) > 0, 1, -1)
