from __future__ import annotations

import csv
import io
import logging
import math
from collections.abc import Iterable, Sequence
from enum import StrEnum
from pathlib import Path

from ..core.types import InvalidSeriesError, SymbolSequence, TimeSeries
from .files import write_text_atomic

logger = logging.getLogger(__name__)


class DatasetFormat(StrEnum):
    UCR_TSV = "ucr-tsv"
    CSV = "csv"


class DatasetFormatError(ValueError):
    """Raised when a dataset file cannot be parsed; carries the 1-based location."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")


def _parse_value(raw: str, *, line: int, column: int) -> float:
    try:
        value = float(raw)
    except ValueError as exc:
        raise DatasetFormatError(f"non-numeric value {raw!r}", line=line, column=column) from exc
    if not math.isfinite(value):
        raise DatasetFormatError(f"non-finite value {raw!r}", line=line, column=column)
    return value


def _trim_trailing_empty(fields: list[str]) -> list[str]:
    end = len(fields)
    while end > 0 and not fields[end - 1].strip():
        end -= 1
    return fields[:end]


def _build_series(
    *, series_id: str, label: str | None, raw_values: Sequence[str], line: int, first_column: int
) -> TimeSeries:
    if not raw_values:
        raise DatasetFormatError("series has no values", line=line)
    values = tuple(
        _parse_value(raw.strip(), line=line, column=first_column + offset)
        for offset, raw in enumerate(raw_values)
    )
    try:
        return TimeSeries(id=series_id, values=values, label=label)
    except InvalidSeriesError as exc:
        raise DatasetFormatError(str(exc), line=line) from exc


def _load_ucr(text: str) -> list[TimeSeries]:
    series: list[TimeSeries] = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        separator = "\t" if "\t" in line else ","
        fields = _trim_trailing_empty(line.split(separator))
        label = fields[0].strip() or None
        series.append(
            _build_series(
                series_id=str(len(series)),
                label=label,
                raw_values=fields[1:],
                line=line_no,
                first_column=2,
            )
        )
    return series


def _load_csv(text: str) -> list[TimeSeries]:
    reader = csv.reader(io.StringIO(text))
    series: list[TimeSeries] = []
    header_seen = False
    for row in reader:
        line_no = reader.line_num
        if not row or not any(field.strip() for field in row):
            continue
        if not header_seen:
            header = [field.strip().lower() for field in row[:2]]
            if header != ["id", "label"]:
                raise DatasetFormatError("CSV header must start with 'id,label'", line=line_no)
            header_seen = True
            continue
        fields = _trim_trailing_empty(row)
        if len(fields) < 3:
            raise DatasetFormatError("expected id, label and at least one value", line=line_no)
        series.append(
            _build_series(
                series_id=fields[0].strip(),
                label=fields[1].strip() or None,
                raw_values=fields[2:],
                line=line_no,
                first_column=3,
            )
        )
    return series


def load_dataset(
    path: Path, format: DatasetFormat | str = DatasetFormat.UCR_TSV
) -> list[TimeSeries]:
    """Load labeled series; UCR lines are `label<TAB|,>v0...`, CSV rows `id,label,v0,...`."""

    text = Path(path).read_text(encoding="utf-8")
    kind = DatasetFormat(format)
    series = _load_csv(text) if kind is DatasetFormat.CSV else _load_ucr(text)
    if not series:
        raise DatasetFormatError(f"empty dataset: {path}")
    logger.debug("Loaded %d series from %s (%s)", len(series), path, kind.value)
    return series


def dumps_dataset(
    series: Iterable[TimeSeries], format: DatasetFormat | str = DatasetFormat.UCR_TSV
) -> str:
    items = list(series)
    if DatasetFormat(format) is DatasetFormat.UCR_TSV:
        return "".join(
            "\t".join([ts.label or "", *(repr(v) for v in ts.values)]) + "\n" for ts in items
        )
    width = max((len(ts) for ts in items), default=0)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "label", *(f"v{i}" for i in range(width))])
    for ts in items:
        writer.writerow([ts.id, ts.label or "", *(repr(v) for v in ts.values)])
    return buffer.getvalue()


def save_dataset(
    series: Iterable[TimeSeries], path: Path, format: DatasetFormat | str = DatasetFormat.UCR_TSV
) -> None:
    write_text_atomic(Path(path), dumps_dataset(series, format))


def save_symbols(seqs: Iterable[SymbolSequence], path: Path) -> None:
    """Write symbol sequences as CSV rows `id,label,s0,s1,...`."""

    items = list(seqs)
    width = max((len(seq) for seq in items), default=0)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "label", *(f"s{i}" for i in range(width))])
    for seq in items:
        writer.writerow([seq.id, seq.label or "", *seq.symbols])
    write_text_atomic(Path(path), buffer.getvalue())


def load_symbols(path: Path, *, alphabet_size: int | None = None) -> list[SymbolSequence]:
    """Read a symbol CSV; the alphabet defaults to the largest symbol seen plus one."""

    reader = csv.reader(io.StringIO(Path(path).read_text(encoding="utf-8")))
    rows: list[tuple[str, str | None, tuple[int, ...]]] = []
    for index, row in enumerate(reader):
        if index == 0 or not row:
            continue
        if len(row) < 2:
            raise DatasetFormatError("expected id and label columns", line=reader.line_num)
        try:
            symbols = tuple(int(field) for field in _trim_trailing_empty(row[2:]))
        except ValueError as exc:
            raise DatasetFormatError(f"non-integer symbol ({exc})", line=reader.line_num) from exc
        rows.append((row[0].strip(), row[1].strip() or None, symbols))
    k = alphabet_size
    if k is None:
        k = max((max(symbols, default=0) for _, _, symbols in rows), default=0) + 1
    return [
        SymbolSequence(id=seq_id, symbols=symbols, alphabet_size=k, label=label)
        for seq_id, label, symbols in rows
    ]
