from __future__ import annotations

from .stats import TransitionCounts, count_transitions, estimate_stats, pooled_stats
from .types import (
    DEFAULT_BINNING,
    DEFAULT_BINS,
    DEFAULT_METRIC,
    Binning,
    BreakpointModel,
    InvalidSeriesError,
    Metric,
    SymbolSequence,
    SymbolStats,
    TimeSeries,
    validate_breakpoints,
)

__all__ = [
    "DEFAULT_BINNING",
    "DEFAULT_BINS",
    "DEFAULT_METRIC",
    "Binning",
    "BreakpointModel",
    "InvalidSeriesError",
    "Metric",
    "SymbolSequence",
    "SymbolStats",
    "TimeSeries",
    "TransitionCounts",
    "count_transitions",
    "estimate_stats",
    "pooled_stats",
    "validate_breakpoints",
]
