from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol


@dataclass(frozen=True, slots=True)
class FitStep:
    iteration: int
    breakpoint: float
    score: float
    alphabet_size: int


class FitObserver(Protocol):
    """Observer for the greedy breakpoint loop.

    Implementations must be fast and must not raise.
    """

    def candidates_ready(self, *, total: int) -> None:
        """Called once with the size of the initial candidate pool."""

    def step_accepted(self, step: FitStep) -> None:
        """Called for every breakpoint that strictly improved the score."""

    def fit_finished(self, *, breakpoints: tuple[float, ...], score: float) -> None:
        """Called once when no remaining candidate improves the score."""


class NullFitObserver:
    def candidates_ready(self, *, total: int) -> None:  # noqa: ARG002
        return None

    def step_accepted(self, step: FitStep) -> None:  # noqa: ARG002
        return None

    def fit_finished(self, *, breakpoints: tuple[float, ...], score: float) -> None:  # noqa: ARG002
        return None


class RecordingFitObserver:
    """Keeps every accepted step; used for trace assertions and verbose output."""

    def __init__(self) -> None:
        self.pool_size: int | None = None
        self.steps: list[FitStep] = []
        self.finished = False

    def candidates_ready(self, *, total: int) -> None:
        self.pool_size = total

    def step_accepted(self, step: FitStep) -> None:
        self.steps.append(step)

    def fit_finished(self, *, breakpoints: tuple[float, ...], score: float) -> None:  # noqa: ARG002
        self.finished = True

    @property
    def scores(self) -> list[float]:
        return [step.score for step in self.steps]
