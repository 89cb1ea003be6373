"""Weighted gain-ratio decision tree used as the boosting weak learner.

Binary numeric splits only; no pruning (boosting wants low-bias weak
learners and handles errors by reweighting).  Sample weights are
normalized internally, so any positive rescaling yields the same tree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TreeParams:
    max_depth: int = 8
    min_leaf_weight: float = 0.01  # fraction of total weight
    min_gain: float = 1e-7


@dataclass(frozen=True)
class DecisionTree:
    """Flat-array binary tree; feature == -1 marks a leaf."""

    feature: np.ndarray     # (n_nodes,) int, -1 for leaves
    threshold: np.ndarray   # (n_nodes,) float
    left: np.ndarray        # (n_nodes,) int child ids, -1 for leaves
    right: np.ndarray
    label: np.ndarray       # (n_nodes,) int in {-1, +1}, leaves only
    confidence: np.ndarray  # (n_nodes,) float in [0.5, 1], leaves only
    params: TreeParams
    n_features: int

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError("feature dimensionality mismatch")
        out = np.empty(X.shape[0], dtype=np.int64)
        stack = [(0, np.arange(X.shape[0]))]
        while stack:
            node, idx = stack.pop()
            if self.feature[node] < 0:
                out[idx] = self.label[node]
                continue
            go_left = X[idx, self.feature[node]] <= self.threshold[node]
            stack.append((self.left[node], idx[go_left]))
            stack.append((self.right[node], idx[~go_left]))
        return out

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "label": self.label.tolist(),
            "confidence": self.confidence.tolist(),
            "n_features": self.n_features,
            "params": {"max_depth": self.params.max_depth,
                       "min_leaf_weight": self.params.min_leaf_weight,
                       "min_gain": self.params.min_gain},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DecisionTree":
        return cls(
            feature=np.asarray(d["feature"], dtype=np.int64),
            threshold=np.asarray(d["threshold"], dtype=np.float64),
            left=np.asarray(d["left"], dtype=np.int64),
            right=np.asarray(d["right"], dtype=np.int64),
            label=np.asarray(d["label"], dtype=np.int64),
            confidence=np.asarray(d["confidence"], dtype=np.float64),
            params=TreeParams(**d["params"]),
            n_features=int(d["n_features"]),
        )


def _binary_entropy(p: np.ndarray) -> np.ndarray:
    """Entropy (natural log) of a two-class distribution given P(+1)."""
    p = np.clip(p, 0.0, 1.0)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        nz = q > 0
        out[nz] -= q[nz] * np.log(q[nz])
    return out


def _best_split(X: np.ndarray, y: np.ndarray, w: np.ndarray):
    """Best (gain_ratio, feature, threshold) over all midpoint candidates.

    Ties among equal gain ratios resolve to the lower feature index, then
    the lower threshold.  Returns (-inf, -1, nan) when no candidate exists.
    """
    W = w.sum()
    Wp = w[y == 1].sum()
    h_parent = float(_binary_entropy(np.array([Wp / W]))[0])
    best_ratio, best_feature, best_threshold = -np.inf, -1, np.nan
    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        ws = w[order]
        cw = np.cumsum(ws)
        cp = np.cumsum(ws * (y[order] == 1))
        cut = np.flatnonzero(xs[:-1] < xs[1:])
        if cut.size == 0:
            continue
        wl = cw[cut]
        wr = W - wl
        ok = (wl > 0) & (wr > 0)
        if not ok.any():
            continue
        wl, wr, plc = wl[ok], wr[ok], cp[cut][ok]
        fl, fr = wl / W, wr / W
        gain = h_parent - fl * _binary_entropy(plc / wl) \
            - fr * _binary_entropy((Wp - plc) / wr)
        split_info = -(fl * np.log(fl) + fr * np.log(fr))
        ratio = gain / split_info
        i = int(np.argmax(ratio))  # first max = lowest threshold
        if ratio[i] > best_ratio:
            best_ratio = float(ratio[i])
            best_feature = j
            c = cut[ok][i]
            best_threshold = (xs[c] + xs[c + 1]) / 2.0
    return best_ratio, best_feature, best_threshold


def fit_tree(features: np.ndarray, labels: np.ndarray,
             sample_weights: np.ndarray,
             params: TreeParams = TreeParams()) -> DecisionTree:
    """Greedy top-down induction maximizing weighted gain ratio.

    Recursion stops at max_depth, on a pure node, when node weight falls
    below min_leaf_weight, or when the best gain ratio is below min_gain.
    Zero-weight instances are excluded from split statistics but still
    routed to leaves.
    """
    X = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    w = np.asarray(sample_weights, dtype=np.float64)
    if X.ndim != 2 or y.shape != (X.shape[0],) or w.shape != y.shape:
        raise ValueError("features/labels/weights dimension mismatch")
    if X.shape[0] < 1:
        raise ValueError("at least one instance required")
    if (w < 0).any() or w.sum() <= 0:
        raise ValueError("weights must be nonnegative with positive sum")
    w = w / w.sum()

    feature, threshold, left, right, label, conf = [], [], [], [], [], []

    def new_node():
        feature.append(-1)
        threshold.append(np.nan)
        left.append(-1)
        right.append(-1)
        label.append(0)
        conf.append(0.0)
        return len(feature) - 1

    def make_leaf(node, idx):
        wpos = w[idx][y[idx] == 1].sum()
        wneg = w[idx].sum() - wpos
        if wpos + wneg > 0:
            label[node] = 1 if wpos > wneg else -1
            conf[node] = max(wpos, wneg) / (wpos + wneg)
        else:  # only zero-weight instances routed here
            label[node] = -1
            conf[node] = 0.5

    def build(idx, depth):
        node = new_node()
        active = idx[w[idx] > 0]
        w_node = w[idx].sum()
        pure = active.size > 0 and (y[active] == y[active[0]]).all()
        if (depth >= params.max_depth or pure or active.size == 0
                or w_node < params.min_leaf_weight):
            make_leaf(node, idx)
            return node
        ratio, f, thr = _best_split(X[active], y[active], w[active])
        if f < 0 or ratio < params.min_gain:
            make_leaf(node, idx)
            return node
        feature[node] = f
        threshold[node] = thr
        go_left = X[idx, f] <= thr
        left[node] = build(idx[go_left], depth + 1)
        right[node] = build(idx[~go_left], depth + 1)
        return node

    build(np.arange(X.shape[0]), 0)
    return DecisionTree(
        feature=np.asarray(feature, dtype=np.int64),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        label=np.asarray(label, dtype=np.int64),
        confidence=np.asarray(conf, dtype=np.float64),
        params=params,
        n_features=X.shape[1],
    )


def predict_tree(tree: DecisionTree, x: np.ndarray) -> int:
    """Route a single feature vector to a leaf; x[f] <= threshold goes left."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (tree.n_features,):
        raise ValueError("feature dimensionality mismatch")
    node = 0
    while tree.feature[node] >= 0:
        if x[tree.feature[node]] <= tree.threshold[node]:
            node = tree.left[node]
        else:
            node = tree.right[node]
    return int(tree.label[node])


def dump_tree(tree: DecisionTree) -> str:
    """Indented text rendering for debugging."""
    lines = []

    def walk(node, depth):
        pad = "  " * depth
        if tree.feature[node] < 0:
            lines.append(f"{pad}leaf label={tree.label[node]:+d} "
                         f"confidence={tree.confidence[node]:.3f}")
        else:
            lines.append(f"{pad}x[{tree.feature[node]}] <= "
                         f"{tree.threshold[node]:.6g}")
            walk(tree.left[node], depth + 1)
            walk(tree.right[node], depth + 1)

    walk(0, 0)
    return "\n".join(lines)
