from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .core.types import SymbolSequence
from .io.files import write_text_atomic


class EventFormatError(ValueError):
    """Raised when an event sequence or event file breaks the run-length invariants."""


@dataclass(frozen=True, slots=True)
class Event:
    symbol: int
    start: int
    duration: int


@dataclass(frozen=True, slots=True)
class EventSequence:
    """Run-length encoded symbols; timestamps are sample indices of the source sequence."""

    id: str
    events: tuple[Event, ...]
    alphabet_size: int
    label: str | None = None

    def __post_init__(self) -> None:
        if not self.events:
            raise EventFormatError(f"event sequence {self.id!r} has no events")
        expected_start = 0
        previous: int | None = None
        for index, event in enumerate(self.events):
            if event.start != expected_start:
                raise EventFormatError(
                    f"event {index} of {self.id!r} starts at {event.start}, "
                    f"expected {expected_start}"
                )
            if event.duration < 1:
                raise EventFormatError(
                    f"event {index} of {self.id!r} has duration {event.duration}"
                )
            if not 0 <= event.symbol < self.alphabet_size:
                raise EventFormatError(
                    f"event {index} of {self.id!r} has symbol {event.symbol} outside "
                    f"[0, {self.alphabet_size})"
                )
            if event.symbol == previous:
                raise EventFormatError(
                    f"events {index - 1} and {index} of {self.id!r} repeat a symbol"
                )
            previous = event.symbol
            expected_start += event.duration

    @property
    def length(self) -> int:
        last = self.events[-1]
        return last.start + last.duration


def run_length_encode(seq: SymbolSequence) -> EventSequence:
    """Collapse maximal runs of identical symbols into (symbol, start, duration) events."""

    symbols = seq.array
    if symbols.size == 0:
        raise EventFormatError(f"cannot encode empty sequence {seq.id!r}")
    starts = np.concatenate(([0], np.flatnonzero(np.diff(symbols)) + 1))
    durations = np.diff(np.append(starts, symbols.size))
    events = tuple(
        Event(symbol=int(symbols[start]), start=int(start), duration=int(duration))
        for start, duration in zip(starts, durations, strict=True)
    )
    return EventSequence(id=seq.id, events=events, alphabet_size=seq.alphabet_size, label=seq.label)


def expand_events(events: EventSequence) -> SymbolSequence:
    symbols = np.repeat(
        [event.symbol for event in events.events],
        [event.duration for event in events.events],
    )
    return SymbolSequence.from_array(
        symbols, alphabet_size=events.alphabet_size, id=events.id, label=events.label
    )


def mean_event_count(seqs: Sequence[EventSequence]) -> float:
    if not seqs:
        return 0.0
    return sum(len(seq.events) for seq in seqs) / len(seqs)


def _event_record(seq: EventSequence) -> dict[str, Any]:
    return {
        "id": seq.id,
        "label": seq.label,
        "alphabet": seq.alphabet_size,
        "events": [[event.symbol, event.start, event.duration] for event in seq.events],
    }


def dumps_events(seqs: Iterable[EventSequence]) -> str:
    return "".join(json.dumps(_event_record(seq), ensure_ascii=False) + "\n" for seq in seqs)


def export_events(seqs: Iterable[EventSequence], path: Path) -> None:
    """Write one JSON object per sequence (JSON-lines, UTF-8, LF)."""

    write_text_atomic(Path(path), dumps_events(seqs))


def _parse_event_record(obj: Any, *, line_no: int) -> EventSequence:
    if not isinstance(obj, dict):
        raise EventFormatError(f"line {line_no}: expected a JSON object")
    seq_id = obj.get("id")
    label = obj.get("label")
    alphabet = obj.get("alphabet")
    raw_events = obj.get("events")
    if not isinstance(seq_id, str):
        raise EventFormatError(f"line {line_no}: 'id' must be a string")
    if label is not None and not isinstance(label, str):
        raise EventFormatError(f"line {line_no}: 'label' must be a string or null")
    if not isinstance(alphabet, int) or isinstance(alphabet, bool):
        raise EventFormatError(f"line {line_no}: 'alphabet' must be an integer")
    if not isinstance(raw_events, list):
        raise EventFormatError(f"line {line_no}: 'events' must be a list")
    events: list[Event] = []
    for entry in raw_events:
        if (
            not isinstance(entry, list)
            or len(entry) != 3
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise EventFormatError(f"line {line_no}: each event must be [symbol, start, duration]")
        events.append(Event(symbol=entry[0], start=entry[1], duration=entry[2]))
    try:
        return EventSequence(
            id=seq_id, events=tuple(events), alphabet_size=alphabet, label=label
        )
    except EventFormatError as exc:
        raise EventFormatError(f"line {line_no}: {exc}") from exc


def import_events(path: Path) -> list[EventSequence]:
    text = Path(path).read_text(encoding="utf-8")
    seqs: list[EventSequence] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise EventFormatError(f"line {line_no}: invalid JSON ({exc})") from exc
        seqs.append(_parse_event_record(obj, line_no=line_no))
    return seqs
