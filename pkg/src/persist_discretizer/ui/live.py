from __future__ import annotations

from contextlib import AbstractContextManager

from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    TaskID,
    TextColumn,
    TimeElapsedColumn,
)
from rich.rule import Rule

from ..discretize.observer import FitObserver, FitStep
from ..evaluation.harness import EvalReport
from ..evaluation.observer import BenchmarkObserver


def _styled(level: str) -> tuple[str, str]:
    if level == "warn":
        return ("⚠", "yellow")
    if level == "error":
        return ("✗", "red")
    if level == "info":
        return ("✓", "green")
    return ("•", "white")


class NullFitLog(AbstractContextManager["NullFitLog"], FitObserver):
    def __enter__(self) -> NullFitLog:
        return self

    def __exit__(self, *_exc: object) -> None:
        return None

    def candidates_ready(self, *, total: int) -> None:  # noqa: ARG002
        return None

    def step_accepted(self, step: FitStep) -> None:  # noqa: ARG002
        return None

    def fit_finished(self, *, breakpoints: tuple[float, ...], score: float) -> None:  # noqa: ARG002
        return None


class RichFitLog(AbstractContextManager["RichFitLog"], FitObserver):
    """Prints one line per accepted breakpoint (interactive fits)."""

    def __init__(self, *, console: Console, title: str) -> None:
        self._console = console
        self._title = title

    def __enter__(self) -> RichFitLog:
        self._console.print(Rule(self._title, style="dim"))
        return self

    def __exit__(self, *_exc: object) -> None:
        return None

    def candidates_ready(self, *, total: int) -> None:
        self._console.print(f"{total} candidate breakpoints", style="dim")

    def step_accepted(self, step: FitStep) -> None:
        icon, style = _styled("info")
        self._console.print(
            f"[{style}]{icon}[/{style}] k={step.alphabet_size} "
            f"breakpoint={step.breakpoint:.6g} score={step.score:.6f}",
            highlight=False,
        )

    def fit_finished(self, *, breakpoints: tuple[float, ...], score: float) -> None:
        if not breakpoints:
            icon, style = _styled("warn")
            self._console.print(f"[{style}]{icon} no breakpoint improves persistence[/{style}]")


class NullBenchmarkLog(AbstractContextManager["NullBenchmarkLog"], BenchmarkObserver):
    def __enter__(self) -> NullBenchmarkLog:
        return self

    def __exit__(self, *_exc: object) -> None:
        return None

    def benchmark_start(self, *, total: int) -> None:  # noqa: ARG002
        return None

    def run_finished(self, report: EvalReport, *, strategy: str) -> None:  # noqa: ARG002
        return None

    def run_failed(self, dataset: str, *, strategy: str, message: str) -> None:  # noqa: ARG002
        return None


class RichBenchmarkProgress(AbstractContextManager["RichBenchmarkProgress"], BenchmarkObserver):
    """Progress bar over (dataset, strategy) runs for interactive benchmarks (TTY)."""

    def __init__(self, *, console: Console, title: str) -> None:
        self._title = title
        self._started = False
        self._progress = Progress(
            TextColumn("{task.description}"),
            BarColumn(bar_width=None),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            TextColumn("{task.fields[status]}", style="dim"),
            console=console,
            transient=True,
            expand=True,
            refresh_per_second=10,
        )
        self._task: TaskID | None = None

    def __enter__(self) -> RichBenchmarkProgress:
        self._progress.start()
        self._started = True
        self._progress.console.print(Rule(self._title, style="dim"))
        return self

    def __exit__(self, *_exc: object) -> None:
        if self._started:
            self._progress.stop()
        self._started = False
        return None

    def benchmark_start(self, *, total: int) -> None:
        if self._task is None:
            self._task = self._progress.add_task("Benchmark", total=total, status="")
        else:
            self._progress.update(self._task, completed=0, total=total, status="")

    def run_finished(self, report: EvalReport, *, strategy: str) -> None:
        if self._task is None:
            return
        self._progress.update(
            self._task,
            advance=1,
            status=f"{report.dataset} {strategy} acc={report.accuracy:.3f}",
        )

    def run_failed(self, dataset: str, *, strategy: str, message: str) -> None:
        icon, style = _styled("warn")
        self._progress.console.print(f"[{style}]{icon} {dataset} {strategy}: {message}[/{style}]")
        if self._task is not None:
            self._progress.advance(self._task)


def make_fit_log(*, console: Console, title: str) -> AbstractContextManager[FitObserver]:
    if console.is_terminal:
        return RichFitLog(console=console, title=title)
    return NullFitLog()


def make_benchmark_observer(
    *, console: Console, title: str
) -> AbstractContextManager[BenchmarkObserver]:
    if console.is_terminal:
        return RichBenchmarkProgress(console=console, title=title)
    return NullBenchmarkLog()
