"""Locality-informed undersampled boosting for imbalanced binary
classification, with a RUSBoost baseline and evaluation tooling."""

from .data import (Dataset, FoldPlan, KeelFormatError, imbalance_ratio,
                   min_max_normalize, parse_keel, serialize_keel,
                   stratified_folds)
from .ensemble import (BoostModel, classify, compute_alpha, decision_score,
                       train_liuboost, train_rusboost)
from .locality import CostVector, assign_weights, knn_indices
from .metrics import aupr, auroc, confusion_counts, pr_curve, roc_curve
from .resample import SampleIndices, random_undersample
from .stats import RankTestResult, wilcoxon_signed_rank
from .tree import DecisionTree, TreeParams, fit_tree, predict_tree

__all__ = [
    "Dataset", "FoldPlan", "KeelFormatError", "imbalance_ratio",
    "min_max_normalize", "parse_keel", "serialize_keel", "stratified_folds",
    "BoostModel", "classify", "compute_alpha", "decision_score",
    "train_liuboost", "train_rusboost",
    "CostVector", "assign_weights", "knn_indices",
    "aupr", "auroc", "confusion_counts", "pr_curve", "roc_curve",
    "SampleIndices", "random_undersample",
    "RankTestResult", "wilcoxon_signed_rank",
    "DecisionTree", "TreeParams", "fit_tree", "predict_tree",
]

__version__ = "0.1.0"
