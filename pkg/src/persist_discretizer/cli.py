from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from enum import StrEnum
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import typer
from rich.console import Console
from rich.logging import RichHandler
from typer.core import TyperGroup

from . import __version__
from .core.stats import pooled_stats
from .core.types import (
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
from .discretize.binning import DegenerateSeriesError
from .discretize.persist import apply_breakpoints, apply_model, fit_multi
from .discretize.sax import (
    DEFAULT_PAA_WIDTH,
    MAX_ALPHABET,
    MIN_ALPHABET,
    sax_breakpoints,
    sax_discretize,
)
from .events import export_events, run_length_encode
from .evaluation.benchmark import DatasetSplit, discover_ucr_archive, run_benchmark, strategy_grid
from .evaluation.harness import (
    DEFAULT_SAX_ALPHABET,
    DiscretizerConfig,
    Method,
    run_evaluation,
)
from .evaluation.synthetic import (
    markov_level_series,
    square_wave_series,
    table_one_series,
    two_class_dataset,
)
from .io.dataset import DatasetFormat, DatasetFormatError, load_dataset, save_dataset, save_symbols
from .io.files import write_text_atomic
from .io.model_file import ModelFormatError, load_model, save_model
from .ui.live import make_benchmark_observer, make_fit_log
from .ui.summary import render_fit_summary, render_reports, render_symbol_table, score_lines

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3

E = TypeVar("E", bound=StrEnum)


def _usage_error_type() -> type[Exception]:
    # typer may bundle its own click; take UsageError from the copy it raises.
    for cls in typer.BadParameter.__mro__:
        if cls.__name__ == "UsageError":
            return cls
    return typer.BadParameter


_USAGE_ERROR = _usage_error_type()


class _UsageExitGroup(TyperGroup):
    """Click reports usage errors with code 2; this CLI reserves 2 for data errors."""

    def parse_args(self, ctx: typer.Context, args: list[str]) -> list[str]:
        try:
            return super().parse_args(ctx, args)
        except _USAGE_ERROR as exc:
            exc.exit_code = EXIT_USAGE  # type: ignore[attr-defined]
            raise

    def invoke(self, ctx: typer.Context) -> Any:
        try:
            return super().invoke(ctx)
        except _USAGE_ERROR as exc:
            exc.exit_code = EXIT_USAGE  # type: ignore[attr-defined]
            raise


app = typer.Typer(
    cls=_UsageExitGroup,
    add_completion=False,
    invoke_without_command=True,
    no_args_is_help=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)


class Emit(StrEnum):
    SYMBOLS = "symbols"
    EVENTS = "events"


class GenerateKind(StrEnum):
    MARKOV = "markov"
    SQUARE_WAVE = "square-wave"
    TABLE_ONE = "table-one"
    TWO_CLASS = "two-class"


def _fail(message: str, code: int) -> NoReturn:
    typer.echo(message, err=True)
    raise typer.Exit(code)


def _choice(enum_type: type[E], value: str, option: str) -> E:
    normalized = value.strip().lower()
    try:
        return enum_type(normalized)
    except ValueError:
        expected = ", ".join(member.value for member in enum_type)
        _fail(f"Invalid {option} value: {value!r}. Expected one of: {expected}.", EXIT_USAGE)


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    package_logger = logging.getLogger("persist_discretizer")
    package_logger.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in package_logger.handlers):
        handler = RichHandler(console=Console(stderr=True), show_path=False, show_time=False)
        handler.setFormatter(logging.Formatter("%(message)s"))
        package_logger.addHandler(handler)


def _load_series(path: Path, fmt: DatasetFormat) -> list[TimeSeries]:
    try:
        return load_dataset(path, fmt)
    except FileNotFoundError:
        _fail(f"File not found: {path}", EXIT_IO)
    except DatasetFormatError as exc:
        _fail(f"Invalid dataset {path}: {exc}", EXIT_DATA)
    except UnicodeDecodeError as exc:
        _fail(f"Invalid dataset {path}: not UTF-8 text ({exc.reason})", EXIT_DATA)
    except OSError as exc:
        _fail(f"Cannot read {path}: {exc.strerror or exc}", EXIT_IO)


def _load_model(path: Path) -> BreakpointModel:
    try:
        return load_model(path)
    except FileNotFoundError:
        _fail(f"Model file not found: {path}", EXIT_IO)
    except (ModelFormatError, UnicodeDecodeError) as exc:
        _fail(f"Invalid model {path}: {exc}", EXIT_DATA)
    except OSError as exc:
        _fail(f"Cannot read {path}: {exc.strerror or exc}", EXIT_IO)


def _write_or_fail(path: Path, write: Any) -> None:
    try:
        write()
    except OSError as exc:
        _fail(f"Cannot write {path}: {exc.strerror or exc}", EXIT_IO)


def _emit_sequences(seqs: Sequence[SymbolSequence], output: Path, emit: Emit) -> None:
    if emit is Emit.EVENTS:
        events = [run_length_encode(seq) for seq in seqs]
        _write_or_fail(output, lambda: export_events(events, output))
    else:
        _write_or_fail(output, lambda: save_symbols(seqs, output))


def _check_bins(bins: int) -> None:
    if bins < 2:
        _fail(f"Invalid --bins value: {bins}. Expected an integer >= 2.", EXIT_USAGE)


def _check_alphabet(alphabet: int) -> None:
    if not MIN_ALPHABET <= alphabet <= MAX_ALPHABET:
        _fail(
            f"Invalid --alphabet value: {alphabet}. "
            f"Expected an integer in {MIN_ALPHABET}..{MAX_ALPHABET}.",
            EXIT_USAGE,
        )


def _check_paa(paa_width: int) -> None:
    if paa_width < 1:
        _fail(f"Invalid --paa value: {paa_width}. Expected an integer >= 1.", EXIT_USAGE)


def _dataset_name(path: Path) -> str:
    stem = path.stem
    for suffix in ("_TRAIN", "_TEST"):
        if stem.endswith(suffix):
            return stem[: -len(suffix)]
    return stem


@app.callback()
def main(
    version: bool = typer.Option(  # noqa: B008
        False,
        "--version",
        help="Print version and exit.",
        is_eager=True,
    ),
    verbose: int = typer.Option(  # noqa: B008
        0,
        "--verbose",
        "-v",
        count=True,
        help="Log progress to stderr (-v info, -vv debug).",
    ),
) -> None:
    if version:
        typer.echo(f"persist-discretizer {__version__}")
        raise typer.Exit(0)
    _configure_logging(verbose)


@app.command()
def fit(
    input_path: Path = typer.Option(  # noqa: B008
        ..., "--input", "-i", help="Dataset to fit on (all series are pooled)."
    ),
    output: Path = typer.Option(  # noqa: B008
        ..., "--output", "-o", help="Where to write the model JSON."
    ),
    dataset_format: str = typer.Option(  # noqa: B008
        DatasetFormat.UCR_TSV.value, "--format", help="Dataset format: ucr-tsv or csv."
    ),
    metric: str = typer.Option(  # noqa: B008
        DEFAULT_METRIC.value, "--metric", help="Persistence metric: kl or wasserstein."
    ),
    binning: str = typer.Option(  # noqa: B008
        DEFAULT_BINNING.value,
        "--binning",
        help="Candidate breakpoints: ef (equal frequency) or ew (equal width).",
    ),
    bins: int = typer.Option(  # noqa: B008
        DEFAULT_BINS, "--bins", help="Number of initial bins for the candidate pool."
    ),
) -> None:
    """Fit persistence breakpoints on a dataset and write the model."""
    fmt = _choice(DatasetFormat, dataset_format, "--format")
    metric_value = _choice(Metric, metric, "--metric")
    binning_value = _choice(Binning, binning, "--binning")
    _check_bins(bins)

    series = _load_series(input_path, fmt)
    console = Console(stderr=True)
    try:
        with make_fit_log(console=console, title=f"persist {metric_value.value}") as observer:
            model = fit_multi(
                series, metric=metric_value, binning=binning_value, bins=bins, observer=observer
            )
    except DegenerateSeriesError as exc:
        _fail(f"Cannot fit {input_path}: {exc}", EXIT_DATA)

    _write_or_fail(output, lambda: save_model(model, output))
    render_fit_summary(console, model, series_count=len(series), output_path=output)
    typer.echo(f"alphabet_size={model.alphabet_size} final_score={model.final_score!r}")


@app.command()
def apply(
    model_path: Path = typer.Option(  # noqa: B008
        ..., "--model", "-m", help="Model JSON from `fit`."
    ),
    input_path: Path = typer.Option(  # noqa: B008
        ..., "--input", "-i", help="Dataset to discretize."
    ),
    output: Path = typer.Option(..., "--output", "-o", help="Output file."),  # noqa: B008
    dataset_format: str = typer.Option(  # noqa: B008
        DatasetFormat.UCR_TSV.value, "--format", help="Dataset format: ucr-tsv or csv."
    ),
    emit: str = typer.Option(  # noqa: B008
        Emit.SYMBOLS.value,
        "--emit",
        help="symbols (CSV id,label,s0,...) or events (JSON lines).",
    ),
) -> None:
    """Discretize a dataset with a fitted model."""
    fmt = _choice(DatasetFormat, dataset_format, "--format")
    emit_value = _choice(Emit, emit, "--emit")
    model = _load_model(model_path)
    series = _load_series(input_path, fmt)
    seqs = [apply_model(model, ts) for ts in series]
    _emit_sequences(seqs, output, emit_value)
    typer.echo(str(output))


@app.command()
def sax(
    input_path: Path = typer.Option(  # noqa: B008
        ..., "--input", "-i", help="Dataset to discretize."
    ),
    output: Path = typer.Option(..., "--output", "-o", help="Output file."),  # noqa: B008
    alphabet: int = typer.Option(  # noqa: B008
        DEFAULT_SAX_ALPHABET, "--alphabet", "-a", help="Alphabet size (2..26)."
    ),
    paa_width: int = typer.Option(  # noqa: B008
        DEFAULT_PAA_WIDTH, "--paa", "-w", help="PAA window length in samples."
    ),
    dataset_format: str = typer.Option(  # noqa: B008
        DatasetFormat.UCR_TSV.value, "--format", help="Dataset format: ucr-tsv or csv."
    ),
    emit: str = typer.Option(  # noqa: B008
        Emit.SYMBOLS.value,
        "--emit",
        help="symbols (CSV id,label,s0,...) or events (JSON lines).",
    ),
) -> None:
    """Discretize a dataset with SAX (z-normalize, PAA, Gaussian breakpoints)."""
    _check_alphabet(alphabet)
    _check_paa(paa_width)
    fmt = _choice(DatasetFormat, dataset_format, "--format")
    emit_value = _choice(Emit, emit, "--emit")
    series = _load_series(input_path, fmt)
    seqs = [sax_discretize(ts, alphabet, paa_width) for ts in series]
    _emit_sequences(seqs, output, emit_value)

    meta = {
        "method": "sax",
        "alphabet": alphabet,
        "paa_width": paa_width,
        "normalization": "per-series",
        "breakpoints": list(sax_breakpoints(alphabet)),
        "time_unit": "paa-window",
    }
    meta_path = output.with_name(f"{output.name}.meta.json")
    _write_or_fail(
        meta_path, lambda: write_text_atomic(meta_path, json.dumps(meta, indent=2) + "\n")
    )
    typer.echo(str(output))


@app.command()
def score(
    input_path: Path = typer.Option(..., "--input", "-i", help="Dataset to score."),  # noqa: B008
    model_path: Path | None = typer.Option(  # noqa: B008
        None, "--model", "-m", help="Model JSON whose breakpoints are scored."
    ),
    breakpoint_values: list[float] | None = typer.Option(  # noqa: B008
        None, "--breakpoint", "-b", help="Breakpoint to score (repeatable); replaces --model."
    ),
    dataset_format: str = typer.Option(  # noqa: B008
        DatasetFormat.UCR_TSV.value, "--format", help="Dataset format: ucr-tsv or csv."
    ),
) -> None:
    """Print per-symbol P(s), P_r(s) and persistence under both metrics."""
    fmt = _choice(DatasetFormat, dataset_format, "--format")
    if (model_path is None) == (not breakpoint_values):
        _fail("Provide exactly one of --model or --breakpoint.", EXIT_USAGE)
    if breakpoint_values:
        try:
            breakpoints = validate_breakpoints(sorted(breakpoint_values))
        except ValueError as exc:
            _fail(f"Invalid --breakpoint values: {exc}", EXIT_USAGE)
    else:
        assert model_path is not None
        breakpoints = _load_model(model_path).breakpoints

    series = _load_series(input_path, fmt)
    stats = pooled_stats(apply_breakpoints(ts, breakpoints) for ts in series)
    for line in score_lines(stats, breakpoints):
        typer.echo(line)
    render_symbol_table(Console(stderr=True), stats, breakpoints=breakpoints)


def _eval_config(
    *, method: str, metric: str, binning: str, bins: int, alphabet: int, paa_width: int
) -> DiscretizerConfig:
    method_value = _choice(Method, method, "--method")
    if method_value is Method.SAX:
        _check_alphabet(alphabet)
        _check_paa(paa_width)
        return DiscretizerConfig.sax(alphabet, paa_width)
    _check_bins(bins)
    return DiscretizerConfig.persist(
        _choice(Metric, metric, "--metric"), _choice(Binning, binning, "--binning"), bins
    )


@app.command(name="eval")
def eval_command(
    train_path: Path = typer.Option(..., "--train", help="Labeled train split."),  # noqa: B008
    test_path: Path = typer.Option(..., "--test", help="Labeled test split."),  # noqa: B008
    output: Path | None = typer.Option(  # noqa: B008
        None, "--output", "-o", help="Write the JSON report here."
    ),
    dataset_format: str = typer.Option(  # noqa: B008
        DatasetFormat.UCR_TSV.value, "--format", help="Dataset format: ucr-tsv or csv."
    ),
    dataset_name: str | None = typer.Option(  # noqa: B008
        None, "--dataset", help="Dataset name for the report (default: from --train)."
    ),
    method: str = typer.Option(  # noqa: B008
        Method.PERSIST.value, "--method", help="Discretizer: persist or sax."
    ),
    metric: str = typer.Option(  # noqa: B008
        DEFAULT_METRIC.value, "--metric", help="Persistence metric: kl or wasserstein."
    ),
    binning: str = typer.Option(  # noqa: B008
        DEFAULT_BINNING.value, "--binning", help="Candidate breakpoints: ef or ew."
    ),
    bins: int = typer.Option(DEFAULT_BINS, "--bins", help="Initial bins (persist)."),  # noqa: B008
    alphabet: int = typer.Option(  # noqa: B008
        DEFAULT_SAX_ALPHABET, "--alphabet", "-a", help="Alphabet size (sax)."
    ),
    paa_width: int = typer.Option(  # noqa: B008
        DEFAULT_PAA_WIDTH, "--paa", "-w", help="PAA window length (sax)."
    ),
) -> None:
    """Fit on --train, classify --test by 1-NN over symbol histograms, report accuracy."""
    fmt = _choice(DatasetFormat, dataset_format, "--format")
    config = _eval_config(
        method=method,
        metric=metric,
        binning=binning,
        bins=bins,
        alphabet=alphabet,
        paa_width=paa_width,
    )
    train = _load_series(train_path, fmt)
    test = _load_series(test_path, fmt)
    name = dataset_name or _dataset_name(train_path)
    try:
        report = run_evaluation(train, test, config, dataset=name)
    except ValueError as exc:
        _fail(f"Cannot evaluate {name}: {exc}", EXIT_DATA)

    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if output is not None:
        _write_or_fail(output, lambda: write_text_atomic(output, text))
    render_reports(Console(stderr=True), [report], title=f"Evaluation ({config.name})")
    typer.echo(f"accuracy={report.accuracy!r}")


@app.command()
def benchmark(
    output: Path = typer.Option(  # noqa: B008
        ..., "--output", "-o", help="JSON-lines report file."
    ),
    archive: Path | None = typer.Option(  # noqa: B008
        None, "--archive", help="UCR archive root with <Name>/<Name>_TRAIN.tsv and _TEST.tsv."
    ),
    train_path: Path | None = typer.Option(  # noqa: B008
        None, "--train", help="Single train split."
    ),
    test_path: Path | None = typer.Option(None, "--test", help="Single test split."),  # noqa: B008
    dataset_format: str = typer.Option(  # noqa: B008
        DatasetFormat.UCR_TSV.value, "--format", help="Format of --train/--test."
    ),
    bins: int = typer.Option(  # noqa: B008
        DEFAULT_BINS, "--bins", help="Initial bins for Persist."
    ),
    paa_width: int = typer.Option(  # noqa: B008
        DEFAULT_PAA_WIDTH, "--paa", "-w", help="PAA window length for SAX."
    ),
) -> None:
    """Run Persist (kl/wasserstein x ef/ew) and SAX (a=2..10) over one split or an archive."""
    _check_bins(bins)
    _check_paa(paa_width)
    single = train_path is not None or test_path is not None
    if archive is not None and single:
        _fail("Use either --archive or --train/--test, not both.", EXIT_USAGE)
    if archive is None and (train_path is None or test_path is None):
        _fail("Provide --archive or both --train and --test.", EXIT_USAGE)

    if archive is not None:
        if not archive.is_dir():
            _fail(f"Archive directory not found: {archive}", EXIT_IO)
        splits = discover_ucr_archive(archive)
        if not splits:
            _fail(f"No <Name>_TRAIN.tsv/<Name>_TEST.tsv pairs under {archive}", EXIT_DATA)
    else:
        assert train_path is not None and test_path is not None
        fmt = _choice(DatasetFormat, dataset_format, "--format")
        for path in (train_path, test_path):
            if not path.is_file():
                _fail(f"File not found: {path}", EXIT_IO)
        splits = [
            DatasetSplit(
                name=_dataset_name(train_path),
                train_path=train_path,
                test_path=test_path,
                format=fmt,
            )
        ]

    configs = strategy_grid(bins=bins, paa_width=paa_width)
    console = Console(stderr=True)
    with make_benchmark_observer(console=console, title="benchmark") as observer:
        reports = run_benchmark(splits, configs, observer=observer)

    text = "".join(report.to_json() + "\n" for report in reports)
    _write_or_fail(output, lambda: write_text_atomic(output, text))
    render_reports(console, reports, title="Benchmark")
    typer.echo(str(output))


@app.command()
def generate(
    output: Path = typer.Option(..., "--output", "-o", help="Dataset file to write."),  # noqa: B008
    kind: str = typer.Option(  # noqa: B008
        GenerateKind.MARKOV.value,
        "--kind",
        help="markov, square-wave, table-one or two-class.",
    ),
    count: int = typer.Option(  # noqa: B008
        1, "--count", "-n", help="Series (per class for two-class)."
    ),
    length: int = typer.Option(  # noqa: B008
        2000, "--length", help="Samples per series (markov, two-class)."
    ),
    seed: int = typer.Option(0, "--seed", help="Random seed."),  # noqa: B008
    dataset_format: str = typer.Option(  # noqa: B008
        DatasetFormat.UCR_TSV.value, "--format", help="Dataset format: ucr-tsv or csv."
    ),
) -> None:
    """Write a synthetic dataset (seeded, reproducible)."""
    kind_value = _choice(GenerateKind, kind, "--kind")
    fmt = _choice(DatasetFormat, dataset_format, "--format")
    if count < 1:
        _fail(f"Invalid --count value: {count}. Expected an integer >= 1.", EXIT_USAGE)
    if length < 1:
        _fail(f"Invalid --length value: {length}. Expected an integer >= 1.", EXIT_USAGE)

    series: list[TimeSeries]
    if kind_value is GenerateKind.TABLE_ONE:
        series = [table_one_series(label="1")]
    elif kind_value is GenerateKind.TWO_CLASS:
        series = two_class_dataset(count, length=length, seed=seed)
    elif kind_value is GenerateKind.SQUARE_WAVE:
        series = [
            square_wave_series(seed=seed + index, id=str(index), label="1")
            for index in range(count)
        ]
    else:
        series = [
            markov_level_series(length, seed=seed + index, id=str(index), label="1")
            for index in range(count)
        ]
    _write_or_fail(output, lambda: save_dataset(series, output, fmt))
    typer.echo(str(output))
