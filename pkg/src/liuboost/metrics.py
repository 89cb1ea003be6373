"""Threshold metrics, ROC/PR curves and their areas over decision scores.

Positive class is +1.  A prediction is positive when score > threshold.
AUROC uses trapezoidal integration (equal to the Mann-Whitney statistic
with half credit for ties); AUPR uses step-wise right-constant precision,
never linear interpolation between PR points.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int


@dataclass(frozen=True)
class Rates:
    precision: float
    tpr: float
    fpr: float
    degenerate: frozenset = frozenset()  # names of zero-denominator rates


@dataclass(frozen=True)
class Curve:
    points: tuple[tuple[float, float], ...]
    area: float


def _check_scored(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be equal-length vectors")
    if not np.all(np.isin(labels, (-1, 1))):
        raise ValueError("labels must be -1 or +1")
    return scores, labels


def confusion_counts(scores, labels, threshold: float) -> ConfusionCounts:
    """Counts at one threshold; predicted positive iff score > threshold."""
    scores, labels = _check_scored(scores, labels)
    pred_pos = scores > threshold
    pos = labels == 1
    return ConfusionCounts(
        tp=int((pred_pos & pos).sum()),
        fp=int((pred_pos & ~pos).sum()),
        tn=int((~pred_pos & ~pos).sum()),
        fn=int((~pred_pos & pos).sum()),
    )


def precision(c: ConfusionCounts) -> float:
    return c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0


def tpr(c: ConfusionCounts) -> float:
    return c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0


def fpr(c: ConfusionCounts) -> float:
    return c.fp / (c.fp + c.tn) if c.fp + c.tn else 0.0


def rates(c: ConfusionCounts) -> Rates:
    """All three rates plus flags naming any zero-denominator rate."""
    degenerate = {name for name, den in
                  (("precision", c.tp + c.fp), ("tpr", c.tp + c.fn),
                   ("fpr", c.fp + c.tn)) if den == 0}
    return Rates(precision=precision(c), tpr=tpr(c), fpr=fpr(c),
                 degenerate=frozenset(degenerate))


def _cumulative_by_threshold(scores, labels):
    """Cumulative (tp, fp) integer counts after each distinct-score group,
    scores processed in descending order with ties grouped."""
    order = np.argsort(-scores, kind="stable")
    s = scores[order]
    pos = (labels[order] == 1).astype(np.int64)
    group_end = np.flatnonzero(np.r_[s[:-1] != s[1:], True])
    tp = np.cumsum(pos)[group_end]
    fp = (group_end + 1) - tp
    return tp, fp


def roc_curve(scores, labels) -> Curve:
    """ROC curve points (fpr, tpr) from (0,0) to (1,1), trapezoidal area."""
    scores, labels = _check_scored(scores, labels)
    p = int((labels == 1).sum())
    n = int((labels == -1).sum())
    if p == 0 or n == 0:
        raise ValueError("both classes required for a ROC curve")
    tp, fp = _cumulative_by_threshold(scores, labels)
    # integer accumulation keeps the trapezoid sum exact (matches the
    # pairwise Mann-Whitney computation bit for bit)
    tp0 = np.r_[0, tp[:-1]]
    fp0 = np.r_[0, fp[:-1]]
    twice_area = ((fp - fp0) * (tp + tp0)).sum()
    area = twice_area / (2.0 * p * n)
    points = [(0.0, 0.0)] + [(float(f) / n, float(t) / p)
                             for f, t in zip(fp, tp)]
    return Curve(points=tuple(points), area=float(area))


def pr_curve(scores, labels) -> Curve:
    """Precision-recall curve with step (right-constant) integration."""
    scores, labels = _check_scored(scores, labels)
    p = int((labels == 1).sum())
    if p == 0:
        raise ValueError("at least one positive label required")
    tp, fp = _cumulative_by_threshold(scores, labels)
    tp0 = np.r_[0, tp[:-1]]
    prec = tp / (tp + fp)
    rec = tp / p
    area = float((((tp - tp0) / p) * prec).sum())
    points = [(0.0, 1.0)] + [(float(r), float(q)) for r, q in zip(rec, prec)]
    return Curve(points=tuple(points), area=area)


def auroc(scores, labels) -> float:
    """Area under the ROC curve."""
    return roc_curve(scores, labels).area


def aupr(scores, labels) -> float:
    """Area under the precision-recall curve."""
    return pr_curve(scores, labels).area


def curve_to_csv(curve: Curve, metric_name: str, path,
                 x_name: str = "x", y_name: str = "y") -> None:
    """Write curve points as CSV with a header row naming the metric."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"metric={metric_name}", f"area={curve.area!r}"])
        writer.writerow([x_name, y_name])
        for x, y in curve.points:
            writer.writerow([repr(x), repr(y)])
