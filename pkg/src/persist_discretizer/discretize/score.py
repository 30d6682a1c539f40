from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt
from scipy.special import rel_entr

from ..core.types import Metric, SymbolStats

KL_EPSILON = 1e-10
REJECTED = -math.inf


class Aggregation(StrEnum):
    MEAN = "mean"
    MIN = "min"
    WEIGHTED = "weighted"


@dataclass(frozen=True, slots=True)
class TwoPointDist:
    """Distribution over two outcomes: `(p1, 1 - p1)`."""

    p1: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must be within [0, 1], got {self.p1!r}")

    @property
    def p2(self) -> float:
        return 1.0 - self.p1


def _kl_terms(
    p: npt.ArrayLike, q: npt.ArrayLike, *, base: float | None = None
) -> npt.NDArray[np.float64]:
    p_arr = np.clip(np.asarray(p, dtype=float), KL_EPSILON, 1.0 - KL_EPSILON)
    q_arr = np.clip(np.asarray(q, dtype=float), KL_EPSILON, 1.0 - KL_EPSILON)
    divergence = rel_entr(p_arr, q_arr) + rel_entr(1.0 - p_arr, 1.0 - q_arr)
    # Cancellation can leave -1e-17 for nearly equal inputs.
    divergence = np.maximum(divergence, 0.0)
    if base is not None:
        divergence = divergence / math.log(base)
    return divergence


def _skl_terms(
    p: npt.ArrayLike, q: npt.ArrayLike, *, base: float | None = None
) -> npt.NDArray[np.float64]:
    return (_kl_terms(p, q, base=base) + _kl_terms(q, p, base=base)) / 2.0


def kl(p: TwoPointDist, q: TwoPointDist, *, base: float | None = None) -> float:
    """D_KL(P || Q) over both outcomes, probabilities clamped to [eps, 1 - eps]."""

    return float(_kl_terms(p.p1, q.p1, base=base))


def skl(p: TwoPointDist, q: TwoPointDist, *, base: float | None = None) -> float:
    return (kl(p, q, base=base) + kl(q, p, base=base)) / 2.0


def wasserstein(p: TwoPointDist, q: TwoPointDist) -> float:
    return abs(p.p1 - q.p1)


def persistence_values(
    p_appear: npt.ArrayLike,
    p_repeat: npt.ArrayLike,
    metric: Metric | str,
) -> npt.NDArray[np.float64]:
    """Signed per-symbol persistence; NaN repetition probabilities become -inf."""

    appear = np.atleast_1d(np.asarray(p_appear, dtype=float))
    repeat = np.atleast_1d(np.asarray(p_repeat, dtype=float))
    if Metric(metric) is Metric.WASSERSTEIN:
        distance = np.abs(appear - repeat)
    else:
        distance = _skl_terms(appear, repeat)
    values = np.sign(repeat - appear) * distance
    values[np.isnan(repeat)] = REJECTED
    return values


def aggregate_values(
    values: npt.ArrayLike,
    weights: npt.ArrayLike | None = None,
    aggregation: Aggregation | str = Aggregation.MEAN,
) -> float:
    scores = np.asarray(values, dtype=float)
    if scores.size == 0:
        raise ValueError("cannot aggregate persistence over zero symbols")
    if np.any(np.isneginf(scores)):
        return REJECTED
    mode = Aggregation(aggregation)
    if mode is Aggregation.MIN:
        return float(scores.min())
    if mode is Aggregation.WEIGHTED:
        if weights is None:
            raise ValueError("weighted aggregation requires weights")
        w = np.asarray(weights, dtype=float)
        return float(np.sum(scores * w) / np.sum(w))
    return float(scores.mean())


def persistence_symbol(stats: SymbolStats, metric: Metric | str) -> float:
    """sgn(P_r - P) * distance((P, 1-P), (P_r, 1-P_r)); -inf when P_r is undefined."""

    if stats.p_repeat is None:
        return REJECTED
    return float(persistence_values(stats.p_appear, stats.p_repeat, metric)[0])


def persistence_aggregate(
    all_stats: Sequence[SymbolStats],
    metric: Metric | str,
    aggregation: Aggregation | str = Aggregation.MEAN,
) -> float:
    if not all_stats:
        raise ValueError("cannot aggregate persistence over zero symbols")
    values = [persistence_symbol(stats, metric) for stats in all_stats]
    weights = [stats.p_appear for stats in all_stats]
    return aggregate_values(values, weights, aggregation)
