#!/usr/bin/env python3
from __future__ import annotations

import sys
from pathlib import Path

from persist_discretizer.events import EventFormatError, expand_events, import_events
from persist_discretizer.io.dataset import DatasetFormatError, load_symbols

_USAGE = "Usage: validate_events.py <events.jsonl> [<symbols.csv>]"


def compare_with_symbols(events_path: Path, symbols_path: Path) -> list[str]:
    """Decode every event sequence and compare it with the symbol CSV row of the same id."""

    errors: list[str] = []
    expected = {seq.id: seq for seq in load_symbols(symbols_path)}
    for seq in import_events(events_path):
        decoded = expand_events(seq)
        original = expected.pop(seq.id, None)
        if original is None:
            errors.append(f"{seq.id}: no symbol row with this id")
        elif decoded.symbols != original.symbols:
            errors.append(f"{seq.id}: decoded symbols differ from the symbol file")
        elif decoded.label != original.label:
            errors.append(f"{seq.id}: label {decoded.label!r} != {original.label!r}")
    for missing in expected:
        errors.append(f"{missing}: symbol row has no event sequence")
    return errors


def main(argv: list[str]) -> int:
    args = argv[1:]
    if not args or args[0] in {"-h", "--help"} or len(args) > 2:
        print(_USAGE, file=sys.stderr)
        return 2

    events_path = Path(args[0])
    try:
        seqs = import_events(events_path)
    except OSError as exc:
        print(f"Failed to read: {events_path} ({exc})", file=sys.stderr)
        return 2
    except EventFormatError as exc:
        print(f"Invalid events: {events_path} ({exc})", file=sys.stderr)
        return 1

    if len(args) == 2:
        try:
            errors = compare_with_symbols(events_path, Path(args[1]))
        except OSError as exc:
            print(f"Failed to read: {args[1]} ({exc})", file=sys.stderr)
            return 2
        except DatasetFormatError as exc:
            print(f"Invalid symbols: {args[1]} ({exc})", file=sys.stderr)
            return 1
        if errors:
            for line in errors[:50]:
                print(line, file=sys.stderr)
            if len(errors) > 50:
                print(f"... ({len(errors) - 50} more)", file=sys.stderr)
            return 1

    total_events = sum(len(seq.events) for seq in seqs)
    print(f"OK: {events_path} ({len(seqs)} sequences, {total_events} events)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
