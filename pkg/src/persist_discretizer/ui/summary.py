from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from rich.console import Console
from rich.table import Table
from rich.text import Text

from ..core.types import BreakpointModel, Metric, SymbolStats
from ..discretize.score import persistence_aggregate, persistence_symbol
from ..evaluation.harness import EvalReport


@dataclass(frozen=True, slots=True)
class SymbolRow:
    symbol: int
    interval: str
    stats: SymbolStats
    kl: float
    wasserstein: float


def _fmt(value: float | None, digits: int = 4) -> str:
    if value is None:
        return "-"
    if math.isinf(value):
        return "-inf" if value < 0 else "inf"
    return f"{value:.{digits}f}"


def interval_label(symbol: int, breakpoints: Sequence[float]) -> str:
    lower = "-inf" if symbol == 0 else f"{breakpoints[symbol - 1]:g}"
    upper = "inf" if symbol == len(breakpoints) else f"{breakpoints[symbol]:g}"
    return f"[{lower}, {upper})"


def symbol_rows(stats: Sequence[SymbolStats], breakpoints: Sequence[float]) -> list[SymbolRow]:
    return [
        SymbolRow(
            symbol=entry.symbol,
            interval=interval_label(entry.symbol, breakpoints),
            stats=entry,
            kl=persistence_symbol(entry, Metric.KL),
            wasserstein=persistence_symbol(entry, Metric.WASSERSTEIN),
        )
        for entry in stats
    ]


def score_lines(stats: Sequence[SymbolStats], breakpoints: Sequence[float]) -> list[str]:
    """Tab-separated per-symbol rows plus a closing `mean` row with both aggregates."""

    lines = ["symbol\tinterval\tp\tp_repeat\tkl\twasserstein"]
    for row in symbol_rows(stats, breakpoints):
        lines.append(
            "\t".join(
                [
                    str(row.symbol),
                    row.interval,
                    _fmt(row.stats.p_appear, 6),
                    _fmt(row.stats.p_repeat, 6),
                    _fmt(row.kl, 6),
                    _fmt(row.wasserstein, 6),
                ]
            )
        )
    kl_total = persistence_aggregate(stats, Metric.KL)
    w_total = persistence_aggregate(stats, Metric.WASSERSTEIN)
    lines.append(f"mean\t\t\t\t{_fmt(kl_total, 6)}\t{_fmt(w_total, 6)}")
    return lines


def render_symbol_table(
    console: Console,
    stats: Sequence[SymbolStats],
    *,
    breakpoints: Sequence[float],
    title: str = "Symbol persistence",
) -> None:
    table = Table(title=title, title_justify="left")
    table.add_column("symbol", justify="right")
    table.add_column("interval")
    table.add_column("count", justify="right")
    table.add_column("P(s)", justify="right")
    table.add_column("P_r(s)", justify="right")
    table.add_column("KL", justify="right")
    table.add_column("W", justify="right")
    for row in symbol_rows(stats, breakpoints):
        table.add_row(
            str(row.symbol),
            row.interval,
            str(row.stats.count),
            _fmt(row.stats.p_appear),
            _fmt(row.stats.p_repeat),
            _fmt(row.kl),
            _fmt(row.wasserstein),
        )
    table.add_section()
    table.add_row(
        "mean",
        "",
        "",
        "",
        "",
        _fmt(persistence_aggregate(stats, Metric.KL)),
        _fmt(persistence_aggregate(stats, Metric.WASSERSTEIN)),
        style="bold",
    )
    console.print(table)


def render_fit_summary(
    console: Console,
    model: BreakpointModel,
    *,
    series_count: int,
    output_path: Path,
) -> None:
    console.print()
    console.print(Text("Fit Summary", style="bold"))
    console.print(
        f"metric={model.metric.value} binning={model.binning.value} bins={model.bins} "
        f"series={series_count}",
        style="dim",
    )
    breakpoints = ", ".join(f"{b:.6g}" for b in model.breakpoints) or "none"
    console.print(f"alphabet_size={model.alphabet_size} final_score={model.final_score:.6f}")
    console.print(f"breakpoints: {breakpoints}")
    console.print(f"Wrote {output_path}", style="dim")


def render_reports(console: Console, reports: Sequence[EvalReport], *, title: str) -> None:
    table = Table(title=title, title_justify="left")
    table.add_column("dataset")
    table.add_column("metric")
    table.add_column("binning")
    table.add_column("k", justify="right")
    table.add_column("accuracy", justify="right")
    table.add_column("events/series", justify="right")
    table.add_column("fit s", justify="right")
    for report in reports:
        table.add_row(
            report.dataset,
            report.metric,
            report.binning or "-",
            str(report.alphabet_size),
            f"{report.accuracy:.4f}",
            f"{report.mean_events_per_series:.1f}",
            f"{report.fit_seconds:.3f}",
        )
    console.print(table)
