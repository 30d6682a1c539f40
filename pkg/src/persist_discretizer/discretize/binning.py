from __future__ import annotations

import numpy as np
import numpy.typing as npt

from ..core.types import Binning, TimeSeries


class DegenerateSeriesError(ValueError):
    """Raised when a series has no spread, so no candidate breakpoint exists."""


def _as_values(ts: TimeSeries | npt.ArrayLike) -> npt.NDArray[np.float64]:
    if isinstance(ts, TimeSeries):
        return ts.array
    return np.asarray(ts, dtype=float).ravel()


def _check(values: npt.NDArray[np.float64], bins: int) -> None:
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    if values.size == 0:
        raise ValueError("cannot bin an empty series")
    if not values.max() > values.min():
        raise DegenerateSeriesError("degenerate series: all values are identical")


def equal_frequency_candidates(ts: TimeSeries | npt.ArrayLike, bins: int) -> tuple[float, ...]:
    """Interior quantile boundaries at ranks j/bins, j = 1..bins-1.

    Boundaries are lower rank statistics (`sorted[ceil(j*n/bins) - 1]`), so every
    candidate is an observed value; duplicates from repeated values are dropped.
    """

    values = _as_values(ts)
    _check(values, bins)
    ordered = np.sort(values)
    n = ordered.size
    j = np.arange(1, bins, dtype=np.int64)
    ranks = -(-j * n // bins) - 1
    return tuple(np.unique(ordered[ranks]).tolist())


def equal_width_candidates(ts: TimeSeries | npt.ArrayLike, bins: int) -> tuple[float, ...]:
    """Uniform grid `min + j*(max-min)/bins`, j = 1..bins-1."""

    values = _as_values(ts)
    _check(values, bins)
    lo = float(values.min())
    hi = float(values.max())
    j = np.arange(1, bins, dtype=float)
    grid = lo + (hi - lo) * j / bins
    return tuple(np.unique(grid).tolist())


def candidates(
    ts: TimeSeries | npt.ArrayLike, binning: Binning | str, bins: int
) -> tuple[float, ...]:
    if Binning(binning) is Binning.EQUAL_WIDTH:
        return equal_width_candidates(ts, bins)
    return equal_frequency_candidates(ts, bins)
