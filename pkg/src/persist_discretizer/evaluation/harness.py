from __future__ import annotations

import json
import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path
from typing import Any

import numpy as np
from scipy.spatial.distance import cdist

from ..core.types import (
    DEFAULT_BINNING,
    DEFAULT_BINS,
    DEFAULT_METRIC,
    Binning,
    BreakpointModel,
    Metric,
    SymbolSequence,
    TimeSeries,
)
from ..discretize.observer import FitObserver
from ..discretize.persist import apply_model, fit_multi
from ..discretize.sax import DEFAULT_PAA_WIDTH, SaxParameters, sax_discretize
from ..discretize.score import Aggregation
from ..events import mean_event_count, run_length_encode
from ..io.files import write_text_atomic
from .features import feature_matrix

logger = logging.getLogger(__name__)

DEFAULT_SAX_ALPHABET = 3


class Method(StrEnum):
    PERSIST = "persist"
    SAX = "sax"


@dataclass(frozen=True, slots=True)
class DiscretizerConfig:
    method: Method = Method.PERSIST
    metric: Metric = DEFAULT_METRIC
    binning: Binning = DEFAULT_BINNING
    bins: int = DEFAULT_BINS
    alphabet: int = DEFAULT_SAX_ALPHABET
    paa_width: int = DEFAULT_PAA_WIDTH
    aggregation: Aggregation = Aggregation.MEAN

    def __post_init__(self) -> None:
        if self.method is Method.SAX:
            SaxParameters(alphabet=self.alphabet, paa_width=self.paa_width)
        elif self.bins < 2:
            raise ValueError(f"bins must be >= 2, got {self.bins}")

    @classmethod
    def persist(
        cls,
        metric: Metric | str = DEFAULT_METRIC,
        binning: Binning | str = DEFAULT_BINNING,
        bins: int = DEFAULT_BINS,
    ) -> DiscretizerConfig:
        return cls(
            method=Method.PERSIST, metric=Metric(metric), binning=Binning(binning), bins=bins
        )

    @classmethod
    def sax(cls, alphabet: int, paa_width: int = DEFAULT_PAA_WIDTH) -> DiscretizerConfig:
        return cls(method=Method.SAX, alphabet=alphabet, paa_width=paa_width)

    @property
    def name(self) -> str:
        if self.method is Method.SAX:
            return f"sax-a{self.alphabet}-w{self.paa_width}"
        return f"persist-{self.metric.value}-{self.binning.value}"


@dataclass(frozen=True, slots=True)
class FittedDiscretizer:
    config: DiscretizerConfig
    model: BreakpointModel | None = None

    @property
    def alphabet_size(self) -> int:
        if self.model is None:
            return self.config.alphabet
        return self.model.alphabet_size

    def transform(self, ts: TimeSeries) -> SymbolSequence:
        if self.model is None:
            return sax_discretize(ts, self.config.alphabet, self.config.paa_width)
        return apply_model(self.model, ts)


def fit_discretizer(
    config: DiscretizerConfig,
    train: Sequence[TimeSeries],
    *,
    observer: FitObserver | None = None,
) -> FittedDiscretizer:
    """Fit on the training split only; SAX needs no fitting."""

    if config.method is Method.SAX:
        return FittedDiscretizer(config=config)
    model = fit_multi(
        train,
        metric=config.metric,
        binning=config.binning,
        bins=config.bins,
        aggregation=config.aggregation,
        observer=observer,
    )
    return FittedDiscretizer(config=config, model=model)


@dataclass(frozen=True, slots=True)
class EvalReport:
    dataset: str
    metric: str
    binning: str | None
    alphabet_size: int
    accuracy: float
    mean_events_per_series: float
    fit_seconds: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "dataset": self.dataset,
            "metric": self.metric,
            "binning": self.binning,
            "alphabet_size": self.alphabet_size,
            "accuracy": self.accuracy,
            "mean_events_per_series": self.mean_events_per_series,
            "fit_seconds": self.fit_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _labels(series: Sequence[TimeSeries], split: str) -> list[str]:
    labels: list[str] = []
    for ts in series:
        if ts.label is None:
            raise ValueError(f"{split} series {ts.id!r} has no label")
        labels.append(ts.label)
    return labels


def nearest_neighbor_predict(
    train_seqs: Sequence[SymbolSequence],
    train_labels: Sequence[str],
    test_seqs: Sequence[SymbolSequence],
) -> list[str]:
    """1-NN over Euclidean distance between symbol features; ties go to the lowest train index."""

    if not train_seqs:
        raise ValueError("nearest-neighbor classification needs at least one train series")
    if not test_seqs:
        return []
    distances = cdist(feature_matrix(list(test_seqs)), feature_matrix(list(train_seqs)))
    nearest = np.argmin(distances, axis=1)
    return [train_labels[int(index)] for index in nearest]


def run_evaluation(
    train: Sequence[TimeSeries],
    test: Sequence[TimeSeries],
    config: DiscretizerConfig,
    *,
    dataset: str = "dataset",
    observer: FitObserver | None = None,
) -> EvalReport:
    if not train:
        raise ValueError("evaluation needs at least one train series")
    if not test:
        raise ValueError("evaluation needs at least one test series")
    train_labels = _labels(train, "train")
    test_labels = _labels(test, "test")
    if len(set(train_labels)) < 2:
        raise ValueError("evaluation needs at least two classes in the train split")

    started = time.perf_counter()
    fitted = fit_discretizer(config, train, observer=observer)
    fit_seconds = time.perf_counter() - started

    train_seqs = [fitted.transform(ts) for ts in train]
    test_seqs = [fitted.transform(ts) for ts in test]
    predicted = nearest_neighbor_predict(train_seqs, train_labels, test_seqs)
    correct = sum(p == t for p, t in zip(predicted, test_labels, strict=True))
    accuracy = correct / len(test_labels)
    events = mean_event_count([run_length_encode(seq) for seq in test_seqs])
    logger.info(
        "%s on %s: accuracy=%.4f k=%d events/series=%.1f",
        config.name,
        dataset,
        accuracy,
        fitted.alphabet_size,
        events,
    )

    is_sax = config.method is Method.SAX
    return EvalReport(
        dataset=dataset,
        metric="sax" if is_sax else config.metric.value,
        binning=None if is_sax else config.binning.value,
        alphabet_size=fitted.alphabet_size,
        accuracy=accuracy,
        mean_events_per_series=events,
        fit_seconds=fit_seconds,
    )


def evaluate(
    train: Sequence[TimeSeries],
    test: Sequence[TimeSeries],
    discretizer: DiscretizerConfig,
    *,
    dataset: str = "dataset",
    report_path: Path | None = None,
) -> float:
    """Accuracy of 1-NN on symbol features; optionally writes the JSON report."""

    report = run_evaluation(train, test, discretizer, dataset=dataset)
    if report_path is not None:
        write_text_atomic(Path(report_path), json.dumps(report.to_dict(), indent=2) + "\n")
    return report.accuracy
