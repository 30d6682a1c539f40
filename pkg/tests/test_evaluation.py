from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from persist_discretizer.core.types import Binning, Metric, SymbolSequence, TimeSeries
from persist_discretizer.discretize.persist import apply_model, fit
from persist_discretizer.discretize.sax import sax_discretize
from persist_discretizer.evaluation.benchmark import (
    DatasetSplit,
    discover_ucr_archive,
    run_benchmark,
    strategy_grid,
)
from persist_discretizer.evaluation.features import symbol_features
from persist_discretizer.evaluation.harness import (
    DiscretizerConfig,
    EvalReport,
    Method,
    evaluate,
    nearest_neighbor_predict,
    run_evaluation,
)
from persist_discretizer.evaluation.synthetic import (
    markov_level_series,
    markov_states,
    two_class_dataset,
)
from persist_discretizer.events import run_length_encode
from persist_discretizer.io.dataset import save_dataset

REPORT_KEYS = [
    "dataset",
    "metric",
    "binning",
    "alphabet_size",
    "accuracy",
    "mean_events_per_series",
    "fit_seconds",
]


def _seq(symbols: list[int], k: int) -> SymbolSequence:
    return SymbolSequence(id="0", symbols=tuple(symbols), alphabet_size=k)


def _relabel(series: list[TimeSeries], labels: list[str | None]) -> list[TimeSeries]:
    return [
        TimeSeries(id=ts.id, values=ts.values, label=label)
        for ts, label in zip(series, labels, strict=True)
    ]


class _RecordingBenchmark:
    def __init__(self) -> None:
        self.total: int | None = None
        self.finished: list[str] = []
        self.failed: list[tuple[str, str]] = []

    def benchmark_start(self, *, total: int) -> None:
        self.total = total

    def run_finished(self, report: EvalReport, *, strategy: str) -> None:
        self.finished.append(strategy)

    def run_failed(self, dataset: str, *, strategy: str, message: str) -> None:
        self.failed.append((dataset, strategy))


def test_features_of_a_single_run() -> None:
    assert symbol_features(_seq([0, 0, 0], 2)).tolist() == [1.0, 0.0, 1.0, 0.0, 0.0, 0.0]


def test_features_of_one_transition() -> None:
    assert symbol_features(_seq([0, 1], 2)).tolist() == [0.5, 0.5, 0.0, 1.0, 0.0, 0.0]


def test_features_of_a_single_sample_have_empty_bigrams() -> None:
    assert symbol_features(_seq([1], 2)).tolist() == [0.0, 1.0, 0.0, 0.0, 0.0, 0.0]


def test_features_are_equivariant_under_relabeling() -> None:
    k = 3
    perm = [2, 0, 1]
    symbols = [0, 1, 1, 2, 0, 0, 2]
    base = symbol_features(_seq(symbols, k))
    permuted = symbol_features(_seq([perm[s] for s in symbols], k))

    for a in range(k):
        assert permuted[perm[a]] == base[a]
        for b in range(k):
            assert permuted[k + perm[a] * k + perm[b]] == base[k + a * k + b]


def test_nearest_neighbor_ties_go_to_the_first_train_series() -> None:
    train = [_seq([0, 1], 2), _seq([0, 1], 2), _seq([1, 1], 2)]

    assert nearest_neighbor_predict(train, ["x", "y", "z"], [_seq([0, 1], 2)]) == ["x"]
    with pytest.raises(ValueError):
        nearest_neighbor_predict([], [], [_seq([0], 2)])


def test_two_class_accuracy_beats_shuffled_labels() -> None:
    config = DiscretizerConfig.persist(Metric.WASSERSTEIN)
    rng = np.random.default_rng(0)
    accuracies: list[float] = []
    shuffled: list[float] = []
    for seed in range(20):
        train = two_class_dataset(10, length=300, seed=2 * seed + 1)
        test = two_class_dataset(10, length=300, seed=2 * seed + 2)
        report = run_evaluation(train, test, config, dataset="two-class")
        accuracies.append(report.accuracy)

        labels = [str(ts.label) for ts in train]
        relabeled = _relabel(train, [str(label) for label in rng.permutation(labels)])
        shuffled.append(run_evaluation(relabeled, test, config).accuracy)

    assert sum(accuracy >= 0.9 for accuracy in accuracies) >= 18
    assert float(np.mean(accuracies)) >= 0.9
    assert float(np.mean(accuracies)) >= float(np.mean(shuffled)) + 0.3


def test_identical_splits_are_classified_perfectly() -> None:
    data = two_class_dataset(5, length=200, seed=4)

    assert evaluate(data, data, DiscretizerConfig()) == 1.0


def test_persist_output_has_fewer_events_than_sax() -> None:
    # Equal-width candidates put both breakpoints inside the gaps between levels;
    # alphabet 4 places a Gaussian breakpoint on the middle level.
    persist_events = 0
    sax_events = 0
    for seed in range(20):
        ts = markov_level_series(2000, seed=seed)
        model = fit(ts, Metric.WASSERSTEIN, Binning.EQUAL_WIDTH)
        persist_events += len(run_length_encode(apply_model(model, ts)).events)
        sax_events += len(run_length_encode(sax_discretize(ts, 4, 1)).events)
    assert persist_events <= 0.5 * sax_events


def test_report_schema_and_file(tmp_path: Path) -> None:
    data = two_class_dataset(3, length=100, seed=9)
    path = tmp_path / "report.json"

    accuracy = evaluate(data, data, DiscretizerConfig.persist("kl", "ew", 20), report_path=path)
    report = json.loads(path.read_text(encoding="utf-8"))
    assert list(report) == REPORT_KEYS
    assert report["accuracy"] == accuracy
    assert report["metric"] == "kl"
    assert report["binning"] == "ew"


def test_sax_report_has_no_binning() -> None:
    data = two_class_dataset(3, length=100, seed=9)
    report = run_evaluation(data, data, DiscretizerConfig.sax(5, 2), dataset="d")

    assert report.metric == "sax"
    assert report.binning is None
    assert report.alphabet_size == 5
    assert list(report.to_dict()) == REPORT_KEYS


def test_evaluation_requires_two_labelled_classes() -> None:
    data = two_class_dataset(2, length=50, seed=1)
    single = _relabel(data, ["a"] * len(data))

    with pytest.raises(ValueError, match="two classes"):
        run_evaluation(single, data, DiscretizerConfig())
    with pytest.raises(ValueError, match="train"):
        run_evaluation([], data, DiscretizerConfig())
    with pytest.raises(ValueError, match="no label"):
        run_evaluation(_relabel(data, [None] * len(data)), data, DiscretizerConfig())


def test_config_validation_and_names() -> None:
    assert DiscretizerConfig().name == "persist-wasserstein-ef"
    assert DiscretizerConfig.sax(3).name == "sax-a3-w2"
    assert DiscretizerConfig.sax(3).method is Method.SAX
    with pytest.raises(ValueError):
        DiscretizerConfig.sax(1)
    with pytest.raises(ValueError):
        DiscretizerConfig.persist(bins=1)


def test_strategy_grid_covers_persist_variants_and_sax_alphabets() -> None:
    names = [config.name for config in strategy_grid()]

    assert names[:4] == [
        "persist-kl-ef",
        "persist-kl-ew",
        "persist-wasserstein-ef",
        "persist-wasserstein-ew",
    ]
    assert names[4:] == [f"sax-a{a}-w2" for a in range(2, 11)]


def test_benchmark_skips_failed_runs(tmp_path: Path) -> None:
    flat = [
        TimeSeries.from_values([4.2] * 10, id="0", label="a"),
        TimeSeries.from_values([4.2] * 10, id="1", label="b"),
    ]
    save_dataset(flat, tmp_path / "Flat_TRAIN.tsv")
    save_dataset(flat, tmp_path / "Flat_TEST.tsv")
    split = DatasetSplit("Flat", tmp_path / "Flat_TRAIN.tsv", tmp_path / "Flat_TEST.tsv")
    observer = _RecordingBenchmark()

    reports = run_benchmark(
        [split], [DiscretizerConfig(), DiscretizerConfig.sax(3)], observer=observer
    )

    assert observer.total == 2
    assert observer.failed == [("Flat", "persist-wasserstein-ef")]
    assert observer.finished == ["sax-a3-w2"]
    assert [r.metric for r in reports] == ["sax"]
    assert reports[0].accuracy == 0.5


def test_benchmark_skips_splits_that_fail_to_load(tmp_path: Path) -> None:
    (tmp_path / "Avar_TRAIN.tsv").write_text("1\t0.5\t1.0\tNaN\n", encoding="utf-8")
    (tmp_path / "Avar_TEST.tsv").write_text("1\t0.5\t1.0\t2.0\n", encoding="utf-8")
    save_dataset(two_class_dataset(2, length=80, seed=1), tmp_path / "Good_TRAIN.tsv")
    save_dataset(two_class_dataset(2, length=80, seed=2), tmp_path / "Good_TEST.tsv")
    splits = [
        DatasetSplit(name, tmp_path / f"{name}_TRAIN.tsv", tmp_path / f"{name}_TEST.tsv")
        for name in ("Avar", "Gone", "Good")
    ]
    configs = [DiscretizerConfig.sax(3), DiscretizerConfig.sax(4)]
    observer = _RecordingBenchmark()

    reports = run_benchmark(splits, configs, observer=observer)

    assert observer.total == 6
    assert observer.failed == [
        ("Avar", "sax-a3-w2"),
        ("Avar", "sax-a4-w2"),
        ("Gone", "sax-a3-w2"),
        ("Gone", "sax-a4-w2"),
    ]
    assert observer.finished == ["sax-a3-w2", "sax-a4-w2"]
    assert [r.dataset for r in reports] == ["Good", "Good"]


def test_discover_ucr_archive(tmp_path: Path) -> None:
    for name in ("Beta", "Alpha"):
        (tmp_path / name).mkdir()
        (tmp_path / name / f"{name}_TRAIN.tsv").write_text("1\t0\n", encoding="utf-8")
        (tmp_path / name / f"{name}_TEST.tsv").write_text("1\t0\n", encoding="utf-8")
    (tmp_path / "Incomplete").mkdir()

    assert [split.name for split in discover_ucr_archive(tmp_path)] == ["Alpha", "Beta"]


def test_markov_states_respect_stay_probability() -> None:
    assert set(markov_states(100, states=3, stay=1.0, seed=3).tolist()) == {
        int(markov_states(1, states=3, stay=1.0, seed=3)[0])
    }
    path = markov_states(5000, states=3, stay=0.9, seed=1)
    switches = np.count_nonzero(np.diff(path))
    assert 350 < switches < 650
    with pytest.raises(ValueError):
        markov_states(10, states=1)
