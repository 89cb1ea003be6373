"""ROC and precision-recall curves from ensemble decision scores.

Trains both boosters on a train split, computes curve points on the
held-out split, and writes them as CSV files any plotting tool can read.
"""
import tempfile
from pathlib import Path

from liuboost import min_max_normalize, stratified_folds, train_liuboost
from liuboost.data import Dataset
from liuboost.ensemble import decision_score
from liuboost.metrics import curve_to_csv, pr_curve, roc_curve
from liuboost.synth import BENCHMARK_CATALOG, generate_catalog_dataset
from liuboost.tree import TreeParams

entry = next(e for e in BENCHMARK_CATALOG if e.name == "glass0")
ds = generate_catalog_dataset(entry)
train_idx, test_idx = stratified_folds(ds, k=3, seed=1).split(0)
train_ds = min_max_normalize(Dataset(
    features=ds.features[train_idx], labels=ds.labels[train_idx],
    feature_names=ds.feature_names, name=ds.name))
test_ds = min_max_normalize(Dataset(
    features=ds.features[test_idx], labels=ds.labels[test_idx],
    feature_names=ds.feature_names, name=ds.name))

model = train_liuboost(train_ds, T=10, rng=0,
                       tree_params=TreeParams(max_depth=2))
scores = decision_score(model, test_ds.features)

roc = roc_curve(scores, test_ds.labels)
pr = pr_curve(scores, test_ds.labels)
print(f"dataset {ds.name}: AUROC={roc.area:.4f}  AUPR={pr.area:.4f}")
print(f"(hard sign votes give coarse curves: {len(roc.points)} ROC points "
      f"from {model.trained_iterations} stages)\n")

print("ROC points (fpr, tpr):")
for x, y in roc.points:
    print(f"  ({x:.3f}, {y:.3f})")

with tempfile.TemporaryDirectory() as tmp:
    roc_path = Path(tmp) / "roc.csv"
    pr_path = Path(tmp) / "pr.csv"
    curve_to_csv(roc, "roc", roc_path, x_name="fpr", y_name="tpr")
    curve_to_csv(pr, "pr", pr_path, x_name="recall", y_name="precision")
    print(f"\nwrote {roc_path.name} and {pr_path.name}; first lines:")
    print("\n".join(roc_path.read_text().splitlines()[:4]))
