from __future__ import annotations

from .benchmark import DatasetSplit, discover_ucr_archive, run_benchmark, strategy_grid
from .features import feature_matrix, symbol_features
from .harness import (
    DiscretizerConfig,
    EvalReport,
    FittedDiscretizer,
    Method,
    evaluate,
    fit_discretizer,
    nearest_neighbor_predict,
    run_evaluation,
)
from .observer import BenchmarkObserver, NullBenchmarkObserver
from .synthetic import (
    markov_level_series,
    markov_states,
    square_wave_series,
    table_one_series,
    two_class_dataset,
)

__all__ = [
    "BenchmarkObserver",
    "DatasetSplit",
    "DiscretizerConfig",
    "EvalReport",
    "FittedDiscretizer",
    "Method",
    "NullBenchmarkObserver",
    "discover_ucr_archive",
    "evaluate",
    "feature_matrix",
    "fit_discretizer",
    "markov_level_series",
    "markov_states",
    "nearest_neighbor_predict",
    "run_benchmark",
    "run_evaluation",
    "square_wave_series",
    "strategy_grid",
    "symbol_features",
    "table_one_series",
    "two_class_dataset",
]
