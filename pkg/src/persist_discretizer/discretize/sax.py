from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from ..core.types import SymbolSequence, TimeSeries
from .persist import symbolize

DEFAULT_PAA_WIDTH = 2
MIN_ALPHABET = 2
MAX_ALPHABET = 26
_FLAT_STD = 1e-12


@dataclass(frozen=True, slots=True)
class SaxParameters:
    alphabet: int
    paa_width: int = DEFAULT_PAA_WIDTH

    def __post_init__(self) -> None:
        _check_alphabet(self.alphabet)
        if self.paa_width < 1:
            raise ValueError(f"PAA width must be >= 1, got {self.paa_width}")

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return sax_breakpoints(self.alphabet)


def _check_alphabet(a: int) -> None:
    if not MIN_ALPHABET <= a <= MAX_ALPHABET:
        raise ValueError(f"SAX alphabet must be within {MIN_ALPHABET}..{MAX_ALPHABET}, got {a}")


def znormalize(ts: TimeSeries) -> TimeSeries:
    """Zero mean, unit population standard deviation; flat series map to zeros."""

    values = ts.array
    std = float(values.std())
    if std < _FLAT_STD:
        normalized = np.zeros_like(values)
    else:
        normalized = (values - values.mean()) / std
    return TimeSeries.from_values(normalized, id=ts.id, label=ts.label)


def paa(ts: TimeSeries, w: int) -> TimeSeries:
    """Means over consecutive windows of `w` samples; a short final window keeps its own mean."""

    if w < 1:
        raise ValueError(f"PAA width must be >= 1, got {w}")
    if w == 1:
        return ts
    values = ts.array
    starts = np.arange(0, values.size, w)
    lengths = np.diff(np.append(starts, values.size))
    means = np.add.reduceat(values, starts) / lengths
    return TimeSeries.from_values(means, id=ts.id, label=ts.label)


def sax_breakpoints(a: int) -> tuple[float, ...]:
    """Standard-normal quantiles at i/a, i = 1..a-1 (equiprobable Gaussian symbols)."""

    _check_alphabet(a)
    return tuple(ndtri(np.arange(1, a) / a).tolist())


def sax_discretize(ts: TimeSeries, a: int, w: int = DEFAULT_PAA_WIDTH) -> SymbolSequence:
    edges = sax_breakpoints(a)
    reduced = paa(znormalize(ts), w)
    return SymbolSequence.from_array(
        symbolize(reduced.array, edges),
        alphabet_size=a,
        id=ts.id,
        label=ts.label,
    )
