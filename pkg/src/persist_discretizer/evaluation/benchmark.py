from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from ..core.types import DEFAULT_BINS, Binning, Metric, TimeSeries
from ..discretize.sax import DEFAULT_PAA_WIDTH
from ..io.dataset import DatasetFormat, load_dataset
from .harness import DiscretizerConfig, EvalReport, run_evaluation
from .observer import BenchmarkObserver, NullBenchmarkObserver

logger = logging.getLogger(__name__)

SAX_ALPHABETS = tuple(range(2, 11))


@dataclass(frozen=True, slots=True)
class DatasetSplit:
    """A named train/test pair of dataset files, loaded on demand."""

    name: str
    train_path: Path
    test_path: Path
    format: DatasetFormat = DatasetFormat.UCR_TSV

    def load(self) -> tuple[list[TimeSeries], list[TimeSeries]]:
        return (
            load_dataset(self.train_path, self.format),
            load_dataset(self.test_path, self.format),
        )


def discover_ucr_archive(root: Path) -> list[DatasetSplit]:
    """Find `<Name>/<Name>_TRAIN.tsv` + `<Name>/<Name>_TEST.tsv` pairs, sorted by name."""

    splits: list[DatasetSplit] = []
    for directory in sorted(p for p in Path(root).iterdir() if p.is_dir()):
        train = directory / f"{directory.name}_TRAIN.tsv"
        test = directory / f"{directory.name}_TEST.tsv"
        if train.is_file() and test.is_file():
            splits.append(DatasetSplit(name=directory.name, train_path=train, test_path=test))
        else:
            logger.debug("Skipping %s: no TRAIN/TEST pair", directory)
    return splits


def strategy_grid(
    *,
    bins: int = DEFAULT_BINS,
    sax_alphabets: Iterable[int] = SAX_ALPHABETS,
    paa_width: int = DEFAULT_PAA_WIDTH,
) -> tuple[DiscretizerConfig, ...]:
    """Persist over {kl, wasserstein} x {ef, ew} followed by SAX per alphabet size."""

    persist = [
        DiscretizerConfig.persist(metric, binning, bins)
        for metric in (Metric.KL, Metric.WASSERSTEIN)
        for binning in (Binning.EQUAL_FREQUENCY, Binning.EQUAL_WIDTH)
    ]
    sax = [DiscretizerConfig.sax(alphabet, paa_width) for alphabet in sax_alphabets]
    return (*persist, *sax)


def run_benchmark(
    splits: Sequence[DatasetSplit],
    configs: Sequence[DiscretizerConfig],
    *,
    observer: BenchmarkObserver | None = None,
) -> list[EvalReport]:
    """Evaluate every strategy on every split; data errors skip the run and are reported."""

    sink = observer or NullBenchmarkObserver()
    sink.benchmark_start(total=len(splits) * len(configs))
    reports: list[EvalReport] = []
    for split in splits:
        try:
            train, test = split.load()
        except (ValueError, OSError) as exc:
            logger.warning("Skipping %s: %s", split.name, exc)
            for config in configs:
                sink.run_failed(split.name, strategy=config.name, message=str(exc))
            continue
        for config in configs:
            try:
                report = run_evaluation(train, test, config, dataset=split.name)
            except ValueError as exc:
                logger.warning("%s on %s failed: %s", config.name, split.name, exc)
                sink.run_failed(split.name, strategy=config.name, message=str(exc))
                continue
            reports.append(report)
            sink.run_finished(report, strategy=config.name)
    return reports
