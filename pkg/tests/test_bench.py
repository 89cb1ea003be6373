import csv
import json

import numpy as np
import pytest
from conftest import make_clusters

from liuboost.bench import (ExperimentConfig, derive_seed, emit_report, main,
                            run_experiment)
from liuboost.data import serialize_keel


def write_dataset(tmp_path, ds):
    path = tmp_path / f"{ds.name}.dat"
    path.write_text(serialize_keel(ds))
    return path


@pytest.fixture
def small_suite(tmp_path):
    paths = [
        write_dataset(tmp_path, make_clusters(12, 28, d=2, sep=3.0, seed=21,
                                              noise=1.2)),
        write_dataset(tmp_path, make_clusters(10, 30, d=3, sep=2.0, seed=22,
                                              noise=1.5)),
    ]
    return tmp_path, paths


def small_config(paths, **overrides):
    base = dict(dataset_paths=tuple(str(p) for p in paths), repeats=2,
                folds=4, rounds=3, knn_k=3, max_depth=2, master_seed=11)
    base.update(overrides)
    return ExperimentConfig(**base)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(dataset_paths=(), repeats=0)
        with pytest.raises(ValueError):
            ExperimentConfig(dataset_paths=(), folds=1)
        with pytest.raises(ValueError):
            ExperimentConfig(dataset_paths=(), target_majority_fraction=1.0)
        with pytest.raises(ValueError, match="unknown algorithms"):
            ExperimentConfig(dataset_paths=(), algorithms=("xgboost",))

    def test_derive_seed_stable_and_distinct(self):
        a = derive_seed(0, "pima", 1, 2, "liuboost")
        assert a == derive_seed(0, "pima", 1, 2, "liuboost")
        assert a != derive_seed(0, "pima", 1, 2, "rusboost")
        assert a != derive_seed(1, "pima", 1, 2, "liuboost")


class TestRunExperiment:
    def test_separable_dataset_perfect_auroc(self, tmp_path):
        path = write_dataset(tmp_path,
                             make_clusters(15, 15, sep=12.0, seed=30,
                                           noise=0.3))
        cfg = ExperimentConfig(dataset_paths=(str(path),), repeats=1,
                               folds=2, rounds=3, knn_k=3, master_seed=0)
        report = run_experiment(cfg)
        for algo in ("liuboost", "rusboost"):
            stats = report["datasets"][path.stem]["algorithms"][algo]
            assert stats["auroc_mean"] == 1.0
            assert stats["aupr_mean"] == 1.0

    def test_values_in_unit_interval_and_wins_sum(self, small_suite):
        _, paths = small_suite
        report = run_experiment(small_config(paths))
        n_datasets = len(report["datasets"])
        assert n_datasets == 2
        for entry in report["datasets"].values():
            for algo_stats in entry["algorithms"].values():
                for metric in ("auroc", "aupr"):
                    vals = algo_stats[f"{metric}_values"]
                    assert len(vals) + entry["skipped_folds"] \
                        <= 2 * 4  # repeats * folds
                    assert all(0.0 <= v <= 1.0 for v in vals)
        for wins in report["summary"]["wins"].values():
            assert sum(wins.values()) == n_datasets

    def test_deterministic_reports(self, small_suite, tmp_path):
        _, paths = small_suite
        cfg = small_config(paths)
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        emit_report(run_experiment(cfg), "json", out1)
        emit_report(run_experiment(cfg), "json", out2)
        assert out1.read_bytes() == out2.read_bytes()

    def test_parallelism_does_not_change_report(self, small_suite, tmp_path):
        _, paths = small_suite
        cfg = small_config(paths)
        out1, out2 = tmp_path / "serial.json", tmp_path / "parallel.json"
        emit_report(run_experiment(cfg, jobs=1), "json", out1)
        emit_report(run_experiment(cfg, jobs=2), "json", out2)
        assert out1.read_bytes() == out2.read_bytes()

    def test_unparseable_dataset_skipped_with_entry(self, small_suite):
        tmp_path, paths = small_suite
        bad = tmp_path / "garbage.dat"
        bad.write_text("not a keel file\n")
        report = run_experiment(small_config(paths + [bad], repeats=1))
        assert str(bad) in report["skipped_datasets"]
        assert len(report["datasets"]) == 2


class TestEmitReport:
    def test_json_round_trip(self, small_suite, tmp_path):
        _, paths = small_suite
        report = run_experiment(small_config(paths, repeats=1))
        out = tmp_path / "report.json"
        emit_report(report, "json", out)
        loaded = json.loads(out.read_text())
        expected = {k: v for k, v in report.items() if k != "timings"}
        assert loaded == json.loads(json.dumps(expected))
        assert loaded["schema_version"] == 1

    def test_timings_excluded_by_default(self, small_suite, tmp_path):
        _, paths = small_suite
        report = run_experiment(small_config(paths, repeats=1))
        out = tmp_path / "report.json"
        emit_report(report, "json", out)
        assert "timings" not in json.loads(out.read_text())
        emit_report(report, "json", out, include_timings=True)
        assert "timings" in json.loads(out.read_text())

    def test_csv_row_count(self, small_suite, tmp_path):
        _, paths = small_suite
        report = run_experiment(small_config(paths, repeats=1))
        out = tmp_path / "report.csv"
        emit_report(report, "csv", out)
        rows = list(csv.reader(out.open()))
        assert rows[0][0] == "dataset"
        data_rows = rows[1:1 + 2 * 2]  # datasets x algorithms
        assert all(len(r) == 8 for r in data_rows)
        assert rows[5] == []  # separator before the summary block
        assert rows[6][:2] == ["summary", "schema_version"]

    def test_empty_report_header_only_csv(self, tmp_path):
        bad = tmp_path / "bad.dat"
        bad.write_text("nope\n")
        report = run_experiment(ExperimentConfig(dataset_paths=(str(bad),)))
        out = tmp_path / "empty.csv"
        emit_report(report, "csv", out)
        rows = list(csv.reader(out.open()))
        assert len(rows) == 1 and rows[0][0] == "dataset"

    def test_bad_format_rejected(self):
        with pytest.raises(ValueError, match="format"):
            emit_report({}, "xml", "out.xml")


class TestCli:
    def test_synth_writes_suite(self, tmp_path):
        out = tmp_path / "suite"
        assert main(["synth", "--out-dir", str(out)]) == 0
        assert len(list(out.glob("*.dat"))) == 18

    def test_run_and_curves(self, small_suite, tmp_path):
        data_dir, _ = small_suite
        out = tmp_path / "report.json"
        rc = main(["run", "--data-dir", str(data_dir), "--out", str(out),
                   "--repeats", "1", "--folds", "3", "--rounds", "2",
                   "--knn", "3", "--max-depth", "2", "--seed", "4"])
        assert rc == 0 and out.exists()
        assert "datasets" in json.loads(out.read_text())

        curves = tmp_path / "curves.csv"
        dat = next(data_dir.glob("*.dat"))
        rc = main(["curves", "--dataset", str(dat), "--out", str(curves),
                   "--rounds", "2", "--folds", "3", "--knn", "3",
                   "--max-depth", "2"])
        assert rc == 0
        rows = list(csv.reader(curves.open()))
        assert rows[0] == ["algorithm", "metric", "x", "y"]
        assert {r[1] for r in rows[1:]} == {"roc", "pr"}
        assert {r[0] for r in rows[1:]} == {"liuboost", "rusboost"}

    def test_wilcoxon_subcommand(self, tmp_path):
        # fabricate a report with six per-dataset mean pairs
        rng = np.random.default_rng(8)
        datasets = {}
        for i in range(6):
            rus, liu = sorted(rng.uniform(0.5, 1.0, size=2))
            datasets[f"d{i}"] = {"algorithms": {
                "rusboost": {"auroc_mean": rus, "aupr_mean": rus},
                "liuboost": {"auroc_mean": liu, "aupr_mean": liu}}}
        path = tmp_path / "report.json"
        path.write_text(json.dumps({"datasets": datasets}))
        assert main(["wilcoxon", "--report", str(path)]) == 0
        assert main(["wilcoxon", "--report", str(path), "--metric", "aupr",
                     "--zeros", "pratt"]) == 0

    def test_error_paths_return_nonzero(self, tmp_path, capsys):
        assert main(["run", "--data-dir", str(tmp_path / "nope"),
                     "--out", str(tmp_path / "o.json")]) == 1
        assert "error" in capsys.readouterr().err
        # too few pairs for the signed-rank test
        small = tmp_path / "small.json"
        small.write_text(json.dumps({"datasets": {}}))
        assert main(["wilcoxon", "--report", str(small)]) == 1
