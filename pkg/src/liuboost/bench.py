"""Benchmark harness: repeated stratified cross-validation of the two
boosters over a directory of KEEL datasets, with AUROC/AUPR aggregation,
signed-rank comparison and machine-readable reports.

Every (dataset, repeat, fold, algorithm) cell derives its own seed from
the master seed, so results are independent of scheduling order and the
degree of parallelism.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import metrics
from .data import (Dataset, KeelFormatError, apply_min_max, fit_min_max,
                   parse_keel, stratified_folds)
from .ensemble import decision_score, train_liuboost, train_rusboost
from .stats import wilcoxon_signed_rank
from .synth import write_benchmark_suite
from .tree import TreeParams

SCHEMA_VERSION = 1
ALGORITHMS = ("liuboost", "rusboost")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_paths: tuple[str, ...]
    algorithms: tuple[str, ...] = ALGORITHMS
    repeats: int = 5
    folds: int = 10
    rounds: int = 10
    knn_k: int = 5
    delta: float = 1.0
    target_majority_fraction: float = 0.5
    max_depth: int = 8
    min_leaf_weight: float = 0.01
    min_gain: float = 1e-7
    master_seed: int = 0

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if not 0 < self.target_majority_fraction < 1:
            raise ValueError("target_majority_fraction must be in (0, 1)")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")

    def tree_params(self) -> TreeParams:
        return TreeParams(max_depth=self.max_depth,
                          min_leaf_weight=self.min_leaf_weight,
                          min_gain=self.min_gain)


def derive_seed(master_seed: int, *parts) -> int:
    """Stable per-cell seed from the master seed and cell coordinates."""
    key = "|".join([str(master_seed)] + [str(p) for p in parts])
    digest = hashlib.sha256(key.encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _train(algo: str, ds: Dataset, cfg: ExperimentConfig, seed: int):
    if algo == "liuboost":
        return train_liuboost(
            ds, T=cfg.rounds, k=cfg.knn_k, delta=cfg.delta, rng=seed,
            tree_params=cfg.tree_params(),
            target_majority_fraction=cfg.target_majority_fraction)
    return train_rusboost(
        ds, T=cfg.rounds, rng=seed, tree_params=cfg.tree_params(),
        target_majority_fraction=cfg.target_majority_fraction)


def _run_repeat(path: str, repeat: int, cfg: ExperimentConfig) -> dict:
    """All folds of one repeat on one dataset; returns raw fold metrics."""
    started = time.perf_counter()
    name = Path(path).stem
    ds = parse_keel(Path(path).read_text(), name=name)
    fold_seed = derive_seed(cfg.master_seed, name, "folds", repeat)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        plan = stratified_folds(ds, cfg.folds, fold_seed)

    out = {algo: {"auroc": [], "aupr": []} for algo in cfg.algorithms}
    skipped = 0
    for fold in range(cfg.folds):
        train_idx, test_idx = plan.split(fold)
        y_train, y_test = ds.labels[train_idx], ds.labels[test_idx]
        if len(set(y_test.tolist())) < 2 or len(set(y_train.tolist())) < 2:
            skipped += 1
            continue
        mins, ranges = fit_min_max(ds.features[train_idx])
        train_ds = Dataset(
            features=apply_min_max(ds.features[train_idx], mins, ranges),
            labels=y_train, feature_names=ds.feature_names, name=ds.name)
        X_test = apply_min_max(ds.features[test_idx], mins, ranges)
        models = {}
        for algo in cfg.algorithms:
            seed = derive_seed(cfg.master_seed, name, repeat, fold, algo)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                models[algo] = _train(algo, train_ds, cfg, seed)
        if any(m.trained_iterations == 0 for m in models.values()):
            skipped += 1  # keep cells paired across algorithms
            continue
        for algo, model in models.items():
            scores = decision_score(model, X_test)
            out[algo]["auroc"].append(metrics.auroc(scores, y_test))
            out[algo]["aupr"].append(metrics.aupr(scores, y_test))
    return {
        "dataset": name,
        "metrics": out,
        "skipped_folds": skipped,
        "seconds": time.perf_counter() - started,
        "n_instances": ds.n_instances,
        "n_features": ds.n_features,
        "imbalance_ratio": ds.majority_count / ds.minority_count,
    }


def _repeat_job(args):
    return args[:2], _run_repeat(*args)


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> dict:
    """Full protocol: repeats x stratified folds per dataset, both
    algorithms, aggregated metrics, win counts and signed-rank tests."""
    started = time.perf_counter()
    skipped_datasets = {}
    paths = []
    for p in cfg.dataset_paths:
        try:
            parse_keel(Path(p).read_text(), name=Path(p).stem)
            paths.append(p)
        except (OSError, KeelFormatError) as exc:
            skipped_datasets[str(p)] = str(exc)

    cells = [(p, r, cfg) for p in sorted(paths) for r in range(cfg.repeats)]
    results = {}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for key, value in pool.map(_repeat_job, cells):
                results[key] = value
    else:
        for args in cells:
            results[args[:2]] = _run_repeat(*args)

    datasets: dict[str, dict] = {}
    timings: dict[str, float] = {}
    for (path, repeat) in sorted(results):
        cell = results[(path, repeat)]
        name = cell["dataset"]
        entry = datasets.setdefault(name, {
            "algorithms": {a: {"auroc_values": [], "aupr_values": []}
                           for a in cfg.algorithms},
            "skipped_folds": 0,
            "n_instances": cell["n_instances"],
            "n_features": cell["n_features"],
            "imbalance_ratio": cell["imbalance_ratio"],
        })
        entry["skipped_folds"] += cell["skipped_folds"]
        timings[name] = timings.get(name, 0.0) + cell["seconds"]
        for algo in cfg.algorithms:
            entry["algorithms"][algo]["auroc_values"].extend(
                cell["metrics"][algo]["auroc"])
            entry["algorithms"][algo]["aupr_values"].extend(
                cell["metrics"][algo]["aupr"])

    for entry in datasets.values():
        for algo_stats in entry["algorithms"].values():
            for metric in ("auroc", "aupr"):
                vals = np.asarray(algo_stats[f"{metric}_values"])
                algo_stats[f"{metric}_mean"] = float(vals.mean()) if vals.size else None
                algo_stats[f"{metric}_std"] = float(vals.std()) if vals.size else None

    summary = {"wins": {}, "wilcoxon": {}}
    if set(cfg.algorithms) == set(ALGORITHMS):
        for metric in ("auroc", "aupr"):
            pairs = []
            wins = {"liuboost": 0, "rusboost": 0, "tie": 0}
            for name in sorted(datasets):
                rus = datasets[name]["algorithms"]["rusboost"][f"{metric}_mean"]
                liu = datasets[name]["algorithms"]["liuboost"][f"{metric}_mean"]
                if rus is None or liu is None:
                    continue
                pairs.append((rus, liu))
                if liu > rus:
                    wins["liuboost"] += 1
                elif rus > liu:
                    wins["rusboost"] += 1
                else:
                    wins["tie"] += 1
            summary["wins"][metric] = wins
            if len(pairs) >= 5:
                try:
                    r = wilcoxon_signed_rank(pairs, zeros="drop")
                    summary["wilcoxon"][metric] = {
                        "w_minus": r.w_minus, "w_plus": r.w_plus,
                        "n_effective": r.n_effective,
                        "p_two_sided": r.p_two_sided, "method": r.method,
                        "zeros": r.zeros,
                        "favors": ("liuboost" if r.w_plus > r.w_minus
                                   else "rusboost"),
                    }
                except ValueError as exc:
                    summary["wilcoxon"][metric] = {"error": str(exc)}

    timings["total"] = time.perf_counter() - started
    return {
        "schema_version": SCHEMA_VERSION,
        "config": asdict(cfg) | {"dataset_paths": sorted(map(str, cfg.dataset_paths))},
        "datasets": datasets,
        "skipped_datasets": skipped_datasets,
        "summary": summary,
        "timings": timings,
    }


def emit_report(report: dict, format: str, path,
                include_timings: bool = False) -> None:
    """Write a report as JSON or CSV.

    Timings are excluded by default so that emitted files are
    byte-reproducible for identical configs and seeds.
    """
    if format not in ("json", "csv"):
        raise ValueError("format must be 'json' or 'csv'")
    body = dict(report)
    if not include_timings:
        body.pop("timings", None)
    path = Path(path)
    if format == "json":
        path.write_text(json.dumps(body, sort_keys=True, indent=2) + "\n")
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", "algorithm", "auroc_mean", "auroc_std",
                         "aupr_mean", "aupr_std", "n_values", "skipped_folds"])
        if not body.get("datasets"):
            return
        for name in sorted(body["datasets"]):
            entry = body["datasets"][name]
            for algo in sorted(entry["algorithms"]):
                s = entry["algorithms"][algo]
                writer.writerow([
                    name, algo, s["auroc_mean"], s["auroc_std"],
                    s["aupr_mean"], s["aupr_std"],
                    len(s["auroc_values"]), entry["skipped_folds"]])
        writer.writerow([])
        writer.writerow(["summary", "schema_version", body["schema_version"]])
        for metric, wins in body.get("summary", {}).get("wins", {}).items():
            writer.writerow(["wins", metric, wins["liuboost"],
                             wins["rusboost"], wins["tie"]])
        for metric, w in body.get("summary", {}).get("wilcoxon", {}).items():
            if "error" in w:
                writer.writerow(["wilcoxon", metric, "error", w["error"]])
            else:
                writer.writerow(["wilcoxon", metric, w["w_minus"], w["w_plus"],
                                 w["p_two_sided"], w["method"], w["favors"]])


def _config_from_args(args, paths) -> ExperimentConfig:
    return ExperimentConfig(
        dataset_paths=tuple(str(p) for p in paths),
        algorithms=tuple(args.algos.split(",")),
        repeats=args.repeats, folds=args.folds, rounds=args.rounds,
        knn_k=args.knn, delta=args.delta,
        target_majority_fraction=args.maj_frac,
        max_depth=args.max_depth, min_leaf_weight=args.min_leaf_weight,
        min_gain=args.min_gain, master_seed=args.seed)


def _add_shared_options(p):
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--rounds", type=int, default=10, help="boosting rounds T")
    p.add_argument("--knn", type=int, default=5, help="neighborhood size k")
    p.add_argument("--delta", type=float, default=1.0,
                   help="fallback cost for one-sided neighborhoods")
    p.add_argument("--maj-frac", type=float, default=0.5,
                   help="majority fraction of each round's sample")
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--min-leaf-weight", type=float, default=0.01)
    p.add_argument("--min-gain", type=float, default=1e-7)
    p.add_argument("--seed", type=int, default=0, help="master seed")


def _cmd_run(args) -> int:
    data_dir = Path(args.data_dir)
    paths = sorted(data_dir.glob("*.dat"))
    if not paths:
        print(f"error: no .dat files in {data_dir}", file=sys.stderr)
        return 1
    cfg = _config_from_args(args, paths)
    report = run_experiment(cfg, jobs=args.jobs)
    emit_report(report, args.format, args.out, include_timings=args.timings)
    for metric, w in report["summary"].get("wilcoxon", {}).items():
        if "error" not in w:
            print(f"{metric}: w-={w['w_minus']} w+={w['w_plus']} "
                  f"p={w['p_two_sided']:.5g} favors {w['favors']}")
    print(f"report written to {args.out}")
    return 0


def _cmd_wilcoxon(args) -> int:
    report = json.loads(Path(args.report).read_text())
    pairs = []
    for name in sorted(report["datasets"]):
        algos = report["datasets"][name]["algorithms"]
        rus = algos["rusboost"][f"{args.metric}_mean"]
        liu = algos["liuboost"][f"{args.metric}_mean"]
        if rus is not None and liu is not None:
            pairs.append((rus, liu))
    r = wilcoxon_signed_rank(pairs, zeros=args.zeros)
    print(f"n_pairs={len(pairs)} n_effective={r.n_effective} "
          f"w-={r.w_minus} w+={r.w_plus} p={r.p_two_sided:.6g} "
          f"method={r.method} zeros={r.zeros}")
    return 0


def _cmd_curves(args) -> int:
    path = Path(args.dataset)
    ds = parse_keel(path.read_text(), name=path.stem)
    plan = stratified_folds(ds, max(2, args.folds),
                            derive_seed(args.seed, ds.name, "curves"))
    train_idx, test_idx = plan.split(0)
    mins, ranges = fit_min_max(ds.features[train_idx])
    train_ds = Dataset(features=apply_min_max(ds.features[train_idx], mins, ranges),
                       labels=ds.labels[train_idx],
                       feature_names=ds.feature_names, name=ds.name)
    X_test = apply_min_max(ds.features[test_idx], mins, ranges)
    y_test = ds.labels[test_idx]

    cfg = _config_from_args(args, [path])
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["algorithm", "metric", "x", "y"])
        for algo in cfg.algorithms:
            model = _train(algo, train_ds, cfg,
                           derive_seed(args.seed, ds.name, 0, 0, algo))
            scores = decision_score(model, X_test)
            roc = metrics.roc_curve(scores, y_test)
            pr = metrics.pr_curve(scores, y_test)
            for x, y in roc.points:
                writer.writerow([algo, "roc", repr(x), repr(y)])
            for x, y in pr.points:
                writer.writerow([algo, "pr", repr(x), repr(y)])
            print(f"{algo}: auroc={roc.area:.4f} aupr={pr.area:.4f}")
    print(f"curve points written to {args.out}")
    return 0


def _cmd_synth(args) -> int:
    paths = write_benchmark_suite(args.out_dir, seed=args.seed)
    print(f"wrote {len(paths)} datasets to {args.out_dir}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bench",
        description="Benchmark locality-informed undersampled boosting "
                    "against the RUSBoost baseline")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the cross-validated comparison")
    p_run.add_argument("--data-dir", required=True)
    p_run.add_argument("--algos", default="liuboost,rusboost")
    _add_shared_options(p_run)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--format", choices=("json", "csv"), default="json")
    p_run.add_argument("--jobs", type=int, default=1)
    p_run.add_argument("--timings", action="store_true",
                       help="include wall-clock timings in the report")
    p_run.set_defaults(func=_cmd_run)

    p_w = sub.add_parser("wilcoxon", help="signed-rank test on a report")
    p_w.add_argument("--report", required=True)
    p_w.add_argument("--metric", choices=("auroc", "aupr"), default="auroc")
    p_w.add_argument("--zeros", choices=("drop", "pratt"), default="drop")
    p_w.set_defaults(func=_cmd_wilcoxon)

    p_c = sub.add_parser("curves", help="emit ROC/PR points for one dataset")
    p_c.add_argument("--dataset", required=True)
    p_c.add_argument("--algos", default="liuboost,rusboost")
    _add_shared_options(p_c)
    p_c.add_argument("--out", required=True)
    p_c.set_defaults(func=_cmd_curves)

    p_s = sub.add_parser("synth", help="write the stand-in benchmark suite")
    p_s.add_argument("--out-dir", required=True)
    p_s.add_argument("--seed", type=int, default=20170915)
    p_s.set_defaults(func=_cmd_synth)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeelFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
