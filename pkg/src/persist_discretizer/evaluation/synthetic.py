from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from ..core.types import TimeSeries

DEFAULT_LEVELS = (0.0, 10.0, 20.0)
DEFAULT_STAY = 0.95
TABLE_ONE_LEVELS = (0.0, 5.0, 10.0)


def _rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def markov_states(
    n: int,
    *,
    states: int,
    stay: float = DEFAULT_STAY,
    seed: int | np.random.Generator | None = None,
) -> npt.NDArray[np.int64]:
    """Hidden state path of a chain that keeps its state with probability `stay`.

    On a switch the next state is drawn uniformly among the other states.
    """

    if n < 1:
        raise ValueError(f"length must be >= 1, got {n}")
    if states < 2:
        raise ValueError(f"a chain needs at least two states, got {states}")
    if not 0.0 <= stay <= 1.0:
        raise ValueError(f"stay probability must be within [0, 1], got {stay}")
    rng = _rng(seed)
    start = rng.integers(states)
    switch = rng.random(n) >= stay
    switch[0] = False
    offsets = np.where(switch, rng.integers(1, states, size=n), 0)
    return (start + np.cumsum(offsets)) % states


def markov_level_series(
    n: int = 2000,
    *,
    levels: Sequence[float] = DEFAULT_LEVELS,
    stay: float = DEFAULT_STAY,
    noise: float = 1.0,
    seed: int | np.random.Generator | None = None,
    id: str = "0",
    label: str | None = None,
) -> TimeSeries:
    """Piecewise-constant levels driven by a persisting Markov chain plus Gaussian noise."""

    rng = _rng(seed)
    level_values = np.asarray(levels, dtype=float)
    path = markov_states(n, states=level_values.size, stay=stay, seed=rng)
    values = level_values[path] + rng.normal(0.0, noise, size=n)
    return TimeSeries.from_values(values, id=id, label=label)


def square_wave_series(
    *,
    cycles: int = 10,
    half_period: int = 50,
    low: float = 0.0,
    high: float = 10.0,
    noise: float = 1.0,
    seed: int | np.random.Generator | None = None,
    id: str = "0",
    label: str | None = None,
) -> TimeSeries:
    """Alternating low/high blocks of `half_period` samples, starting low."""

    if cycles < 1 or half_period < 1:
        raise ValueError("cycles and half_period must be >= 1")
    rng = _rng(seed)
    block = np.concatenate((np.full(half_period, low), np.full(half_period, high)))
    values = np.tile(block, cycles) + rng.normal(0.0, noise, size=2 * half_period * cycles)
    return TimeSeries.from_values(values, id=id, label=label)


def table_one_series(*, id: str = "table-1", label: str | None = None) -> TimeSeries:
    """Deterministic 2000-sample, three-level series with two competing breakpoints.

    With levels L=0, M=5, H=10 a breakpoint at 10 (L+M vs H) gives a rare, weakly
    persisting H symbol (P=0.03, P_r~0.62) next to P=0.97, P_r~0.99, while a
    breakpoint at 5 (L vs M+H) gives P=0.53/0.47 with P_r~0.93 for both symbols.
    KL prefers the first split and Wasserstein the second.
    """

    low, mid, high = TABLE_ONE_LEVELS
    values: list[float] = []
    for i in range(70):
        values.extend([low] * (15 if i < 66 else 14))
        block = 14 if i < 30 else 13
        highs = 3 if i < 14 else 2 if i < 23 else 0
        values.extend([high] * highs + [mid] * (block - highs))
    values.extend([low] * 14)
    return TimeSeries.from_values(values, id=id, label=label)


def two_class_dataset(
    n_per_class: int = 20,
    *,
    length: int = 300,
    stay: float = DEFAULT_STAY,
    noise: float = 1.0,
    seed: int | np.random.Generator | None = None,
    id_prefix: str = "",
) -> list[TimeSeries]:
    """Class "a" switches between levels {0, 10}, class "b" between {0, 20}.

    Series alternate a, b, a, b, ... so any prefix stays balanced.
    """

    if n_per_class < 1:
        raise ValueError(f"n_per_class must be >= 1, got {n_per_class}")
    rng = _rng(seed)
    series: list[TimeSeries] = []
    for _ in range(n_per_class):
        for label, levels in (("a", (0.0, 10.0)), ("b", (0.0, 20.0))):
            series.append(
                markov_level_series(
                    length,
                    levels=levels,
                    stay=stay,
                    noise=noise,
                    seed=rng,
                    id=f"{id_prefix}{len(series)}",
                    label=label,
                )
            )
    return series
