"""Per-instance cost assignment from k-nearest-neighbor class composition.

Every training instance receives a pair (weight_plus, weight_minus):
weight_plus amplifies the boosting weight increase when the instance is
misclassified, weight_minus accelerates the decrease when it is correct.
Instances in hostile neighborhoods (few same-class neighbors) get large
weight_plus; instances in safe neighborhoods get large weight_minus.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist


@dataclass(frozen=True)
class CostVector:
    """Locality-derived cost pair for each training instance."""

    weight_plus: np.ndarray   # (m,) in (0, 1]
    weight_minus: np.ndarray  # (m,) in (0, 1]
    n_same: np.ndarray        # (m,) same-class neighbor counts
    n_opposite: np.ndarray    # (m,) opposite-class neighbor counts
    k: int
    delta: float


def _squared_distances(features: np.ndarray) -> np.ndarray:
    d = cdist(features, features, "sqeuclidean")
    np.fill_diagonal(d, np.inf)  # never a neighbor of itself
    return d


def knn_indices(features: np.ndarray, i: int, k: int) -> np.ndarray:
    """Indices of the k nearest rows to row i (self excluded).

    Euclidean distance; ties broken by smaller index; sorted by
    (distance, index).
    """
    features = np.asarray(features, dtype=np.float64)
    m = features.shape[0]
    if not 1 <= k <= m - 1:
        raise ValueError(f"k={k} must be in [1, m-1] with m={m}")
    d = ((features - features[i]) ** 2).sum(axis=1)
    d[i] = np.inf
    order = np.argsort(d, kind="stable")  # stable sort = index tie-break
    return order[:k]


def _neighbor_matrix(features: np.ndarray, k: int) -> np.ndarray:
    """(m, k) neighbor indices for every row, same tie rule as knn_indices."""
    d = _squared_distances(features)
    m = d.shape[0]
    # argpartition is O(m) per row; exact only when no tie straddles the
    # k-th position, so such rows are redone with a stable full sort.
    part = np.argpartition(d, k - 1, axis=1)[:, :k]
    kth = np.partition(d, k - 1, axis=1)[:, k - 1:k]
    ambiguous = (d <= kth).sum(axis=1) > k
    rows = np.arange(m)[:, None]
    order = np.take_along_axis(part, np.argsort(d[rows, part], kind="stable", axis=1), axis=1)
    for i in np.flatnonzero(ambiguous):
        order[i] = np.argsort(d[i], kind="stable")[:k]
    return order


def assign_weights(ds, k: int = 5, delta: float = 1.0) -> CostVector:
    """Compute (weight_plus, weight_minus) for every instance of a Dataset.

    With n_s same-class and n_o opposite-class neighbors among the k
    nearest: weight_plus = 1/n_s (delta when n_s = 0) and
    weight_minus = 1/n_o (delta when n_o = 0).
    """
    m = ds.n_instances
    if not 1 <= k <= m - 1:
        raise ValueError(f"k={k} must be in [1, m-1] with m={m}")
    if not 0 < delta <= 1:
        raise ValueError("delta must be in (0, 1]")
    neighbors = _neighbor_matrix(ds.features, k)
    same = ds.labels[neighbors] == ds.labels[:, None]
    n_same = same.sum(axis=1)
    n_opp = k - n_same
    with np.errstate(divide="ignore"):
        weight_plus = np.where(n_same == 0, delta, 1.0 / np.maximum(n_same, 1))
        weight_minus = np.where(n_opp == 0, delta, 1.0 / np.maximum(n_opp, 1))
    return CostVector(
        weight_plus=weight_plus,
        weight_minus=weight_minus,
        n_same=n_same,
        n_opposite=n_opp,
        k=k,
        delta=delta,
    )


def dump_costs_csv(cv: CostVector, labels: np.ndarray, path) -> None:
    """Debug dump: one row per instance with neighbor counts and costs."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "label", "n_same", "n_opposite",
                         "weight_plus", "weight_minus"])
        for i in range(len(labels)):
            writer.writerow([i, int(labels[i]), int(cv.n_same[i]),
                             int(cv.n_opposite[i]),
                             repr(float(cv.weight_plus[i])),
                             repr(float(cv.weight_minus[i]))])
