from __future__ import annotations

from typing import Protocol

from .harness import EvalReport


class BenchmarkObserver(Protocol):
    """Progress sink for a strategy grid run.

    Implementations must be fast and must not raise.
    """

    def benchmark_start(self, *, total: int) -> None:
        """Called once with the number of (dataset, strategy) runs."""

    def run_finished(self, report: EvalReport, *, strategy: str) -> None:
        """Called after every successful run."""

    def run_failed(self, dataset: str, *, strategy: str, message: str) -> None:
        """Called when a run is skipped because of a data error."""


class NullBenchmarkObserver:
    def benchmark_start(self, *, total: int) -> None:  # noqa: ARG002
        return None

    def run_finished(self, report: EvalReport, *, strategy: str) -> None:  # noqa: ARG002
        return None

    def run_failed(self, dataset: str, *, strategy: str, message: str) -> None:  # noqa: ARG002
        return None
