from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

import numpy as np
import numpy.typing as npt

from ..core.stats import TransitionCounts
from ..core.types import (
    DEFAULT_BINNING,
    DEFAULT_BINS,
    DEFAULT_METRIC,
    Binning,
    BreakpointModel,
    Metric,
    SymbolSequence,
    TimeSeries,
    validate_breakpoints,
)
from .binning import candidates as make_candidates
from .observer import FitObserver, FitStep, NullFitObserver
from .score import REJECTED, Aggregation, aggregate_values, persistence_values

logger = logging.getLogger(__name__)


def symbolize(values: npt.ArrayLike, breakpoints: npt.ArrayLike) -> npt.NDArray[np.int64]:
    """Symbol j for b[j-1] <= v < b[j] (lower-inclusive, half-open intervals)."""

    edges = np.asarray(breakpoints, dtype=float)
    return np.searchsorted(edges, np.asarray(values, dtype=float), side="right").astype(np.int64)


def apply_breakpoints(ts: TimeSeries, breakpoints: Iterable[float]) -> SymbolSequence:
    edges = validate_breakpoints(breakpoints)
    return SymbolSequence.from_array(
        symbolize(ts.array, edges),
        alphabet_size=len(edges) + 1,
        id=ts.id,
        label=ts.label,
    )


def apply_model(model: BreakpointModel, ts: TimeSeries) -> SymbolSequence:
    return apply_breakpoints(ts, model.breakpoints)


class _PooledScorer:
    """Scores breakpoint sets over one or more series without cross-series transitions."""

    def __init__(
        self,
        series: Sequence[TimeSeries],
        *,
        metric: Metric,
        aggregation: Aggregation,
    ) -> None:
        if not series:
            raise ValueError("cannot score breakpoints over an empty dataset")
        self._values = np.concatenate([ts.array for ts in series])
        # successor_valid[i]: position i has a successor inside the same series.
        successor_valid = np.ones(self._values.size - 1, dtype=bool)
        ends = np.cumsum([len(ts) for ts in series])[:-1]
        successor_valid[ends - 1] = False
        self._successor_valid = successor_valid
        self._metric = metric
        self._aggregation = aggregation

    @property
    def values(self) -> npt.NDArray[np.float64]:
        return self._values

    def counts(self, breakpoints: npt.ArrayLike) -> TransitionCounts:
        edges = np.asarray(breakpoints, dtype=float)
        k = edges.size + 1
        symbols = symbolize(self._values, edges)
        head = symbols[:-1][self._successor_valid]
        tail = symbols[1:][self._successor_valid]
        return TransitionCounts(
            counts=np.bincount(symbols, minlength=k),
            nonterminal=np.bincount(head, minlength=k),
            self_pairs=np.bincount(head[head == tail], minlength=k),
        )

    def score(self, breakpoints: npt.ArrayLike) -> float:
        p_appear, p_repeat = self.counts(breakpoints).probabilities()
        values = persistence_values(p_appear, p_repeat, self._metric)
        return aggregate_values(values, p_appear, self._aggregation)

    def best(self, bps: Iterable[float], pool: Iterable[float]) -> tuple[float, float]:
        current = np.asarray(sorted(bps), dtype=float)
        best_candidate: float | None = None
        best_score = REJECTED
        # Ascending order plus strict improvement gives the smallest value on ties.
        for candidate in sorted(pool):
            trial = np.insert(current, np.searchsorted(current, candidate), candidate)
            score = self.score(trial)
            if best_candidate is None or score > best_score:
                best_candidate = candidate
                best_score = score
        if best_candidate is None:
            raise ValueError("best_bp requires at least one candidate")
        return best_candidate, best_score


def best_bp(
    ts: TimeSeries,
    bps: Iterable[float],
    candidates: Iterable[float],
    metric: Metric | str = DEFAULT_METRIC,
    *,
    aggregation: Aggregation | str = Aggregation.MEAN,
) -> tuple[float, float]:
    """Return the candidate whose addition to `bps` maximizes aggregate persistence."""

    scorer = _PooledScorer([ts], metric=Metric(metric), aggregation=Aggregation(aggregation))
    return scorer.best(bps, candidates)


def _greedy_fit(
    series: Sequence[TimeSeries],
    *,
    metric: Metric,
    binning: Binning,
    bins: int,
    aggregation: Aggregation,
    observer: FitObserver,
) -> BreakpointModel:
    scorer = _PooledScorer(series, metric=metric, aggregation=aggregation)
    pool = list(make_candidates(scorer.values, binning, bins))
    observer.candidates_ready(total=len(pool))
    logger.debug("Candidate pool: %d %s breakpoints (bins=%d)", len(pool), binning.value, bins)

    bps: list[float] = []
    score = 0.0
    while pool:
        candidate, new_score = scorer.best(bps, pool)
        if not new_score > score:
            logger.debug(
                "Stopping: best candidate %r scores %r, current %r", candidate, new_score, score
            )
            break
        score = new_score
        bps = sorted([*bps, candidate])
        pool.remove(candidate)
        step = FitStep(
            iteration=len(bps),
            breakpoint=candidate,
            score=score,
            alphabet_size=len(bps) + 1,
        )
        observer.step_accepted(step)
        logger.info("Accepted breakpoint %r (k=%d, score=%.6f)", candidate, len(bps) + 1, score)

    if not bps:
        logger.warning("No candidate breakpoint improves persistence; returning a k=1 model")
    observer.fit_finished(breakpoints=tuple(bps), score=score)
    return BreakpointModel(
        breakpoints=tuple(bps),
        metric=metric,
        binning=binning,
        bins=bins,
        final_score=score,
    )


def fit(
    ts: TimeSeries,
    metric: Metric | str = DEFAULT_METRIC,
    binning: Binning | str = DEFAULT_BINNING,
    bins: int = DEFAULT_BINS,
    *,
    aggregation: Aggregation | str = Aggregation.MEAN,
    observer: FitObserver | None = None,
) -> BreakpointModel:
    """Greedy forward selection of breakpoints while the persistence score strictly rises."""

    return _greedy_fit(
        [ts],
        metric=Metric(metric),
        binning=Binning(binning),
        bins=bins,
        aggregation=Aggregation(aggregation),
        observer=observer or NullFitObserver(),
    )


def fit_multi(
    dataset: Sequence[TimeSeries],
    metric: Metric | str = DEFAULT_METRIC,
    binning: Binning | str = DEFAULT_BINNING,
    bins: int = DEFAULT_BINS,
    *,
    aggregation: Aggregation | str = Aggregation.MEAN,
    observer: FitObserver | None = None,
) -> BreakpointModel:
    """Like `fit`, with candidates from the pooled values and counts pooled per series."""

    if not dataset:
        raise ValueError("fit_multi requires at least one series")
    return _greedy_fit(
        list(dataset),
        metric=Metric(metric),
        binning=Binning(binning),
        bins=bins,
        aggregation=Aggregation(aggregation),
        observer=observer or NullFitObserver(),
    )
