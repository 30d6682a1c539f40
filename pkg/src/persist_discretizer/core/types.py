from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt

DEFAULT_BINS = 100


class InvalidSeriesError(ValueError):
    """Raised when a series or symbol sequence violates its construction invariants."""


class Metric(StrEnum):
    KL = "kl"
    WASSERSTEIN = "wasserstein"


class Binning(StrEnum):
    EQUAL_FREQUENCY = "ef"
    EQUAL_WIDTH = "ew"


DEFAULT_METRIC = Metric.WASSERSTEIN
DEFAULT_BINNING = Binning.EQUAL_FREQUENCY


@dataclass(frozen=True, slots=True)
class TimeSeries:
    """One univariate series with an optional class label."""

    id: str
    values: tuple[float, ...]
    label: str | None = None

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise InvalidSeriesError(f"series {self.id!r} is empty")
        for index, value in enumerate(self.values):
            if not math.isfinite(value):
                raise InvalidSeriesError(
                    f"series {self.id!r} has non-finite value {value!r} at index {index}"
                )

    @classmethod
    def from_values(
        cls, values: Iterable[float] | npt.ArrayLike, *, id: str = "0", label: str | None = None
    ) -> TimeSeries:
        array = np.asarray(values, dtype=float).ravel()
        return cls(id=id, values=tuple(array.tolist()), label=label)

    @property
    def array(self) -> npt.NDArray[np.float64]:
        return np.asarray(self.values, dtype=float)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, slots=True)
class BreakpointModel:
    """A fitted discretizer: `len(breakpoints) + 1` half-open intervals, lower-inclusive."""

    breakpoints: tuple[float, ...]
    metric: Metric = DEFAULT_METRIC
    binning: Binning = DEFAULT_BINNING
    bins: int = DEFAULT_BINS
    final_score: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "breakpoints", validate_breakpoints(self.breakpoints))
        if self.bins < 1:
            raise ValueError(f"bins must be positive, got {self.bins}")

    @property
    def alphabet_size(self) -> int:
        return len(self.breakpoints) + 1


@dataclass(frozen=True, slots=True)
class SymbolSequence:
    id: str
    symbols: tuple[int, ...]
    alphabet_size: int
    label: str | None = None

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise InvalidSeriesError(f"alphabet size must be >= 1, got {self.alphabet_size}")
        if self.symbols:
            array = np.asarray(self.symbols)
            if int(array.min()) < 0 or int(array.max()) >= self.alphabet_size:
                raise InvalidSeriesError(
                    f"sequence {self.id!r} has symbols outside [0, {self.alphabet_size})"
                )

    @classmethod
    def from_array(
        cls,
        symbols: npt.ArrayLike,
        *,
        alphabet_size: int,
        id: str = "0",
        label: str | None = None,
    ) -> SymbolSequence:
        array = np.asarray(symbols, dtype=np.int64).ravel()
        return cls(id=id, symbols=tuple(array.tolist()), alphabet_size=alphabet_size, label=label)

    @property
    def array(self) -> npt.NDArray[np.int64]:
        return np.asarray(self.symbols, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True, slots=True)
class SymbolStats:
    """Appearance and repetition probabilities of one symbol.

    `p_repeat` is None when the symbol never occurs before the last index.
    """

    symbol: int
    p_appear: float
    p_repeat: float | None
    count: int
    nonterminal: int = 0

    @property
    def defined(self) -> bool:
        return self.p_repeat is not None


def validate_breakpoints(breakpoints: Iterable[float]) -> tuple[float, ...]:
    values = tuple(float(b) for b in breakpoints)
    for value in values:
        if not math.isfinite(value):
            raise ValueError(f"breakpoint {value!r} is not finite")
    for lower, upper in zip(values, values[1:], strict=False):
        if not lower < upper:
            raise ValueError(f"breakpoints must be strictly increasing: {lower!r} >= {upper!r}")
    return values
