from __future__ import annotations

from .binning import (
    DegenerateSeriesError,
    candidates,
    equal_frequency_candidates,
    equal_width_candidates,
)
from .observer import FitObserver, FitStep, NullFitObserver, RecordingFitObserver
from .persist import apply_breakpoints, apply_model, best_bp, fit, fit_multi, symbolize
from .sax import SaxParameters, paa, sax_breakpoints, sax_discretize, znormalize
from .score import (
    KL_EPSILON,
    Aggregation,
    TwoPointDist,
    kl,
    persistence_aggregate,
    persistence_symbol,
    skl,
    wasserstein,
)

__all__ = [
    "KL_EPSILON",
    "Aggregation",
    "DegenerateSeriesError",
    "FitObserver",
    "FitStep",
    "NullFitObserver",
    "RecordingFitObserver",
    "SaxParameters",
    "TwoPointDist",
    "apply_breakpoints",
    "apply_model",
    "best_bp",
    "candidates",
    "equal_frequency_candidates",
    "equal_width_candidates",
    "fit",
    "fit_multi",
    "kl",
    "paa",
    "persistence_aggregate",
    "persistence_symbol",
    "sax_breakpoints",
    "sax_discretize",
    "skl",
    "symbolize",
    "wasserstein",
    "znormalize",
]
