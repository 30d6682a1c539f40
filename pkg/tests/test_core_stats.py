from __future__ import annotations

import math

import numpy as np
import pytest

from persist_discretizer.core.stats import (
    TransitionCounts,
    count_transitions,
    estimate_stats,
    pooled_stats,
)
from persist_discretizer.core.types import (
    BreakpointModel,
    InvalidSeriesError,
    Metric,
    SymbolSequence,
    TimeSeries,
)
from persist_discretizer.discretize.score import persistence_values


def _seq(symbols: list[int], k: int, seq_id: str = "0") -> SymbolSequence:
    return SymbolSequence(id=seq_id, symbols=tuple(symbols), alphabet_size=k)


def test_estimate_stats_counts_self_transitions() -> None:
    stats = estimate_stats(_seq([0, 0, 1, 1, 1, 0], 2))

    assert [s.count for s in stats] == [3, 3]
    assert stats[0].p_appear == pytest.approx(0.5)
    assert stats[0].p_repeat == pytest.approx(1 / 2)
    assert stats[1].p_repeat == pytest.approx(2 / 3)
    assert stats[0].nonterminal == 2
    assert stats[1].nonterminal == 3


def test_symbol_only_at_last_index_has_undefined_repeat() -> None:
    stats = estimate_stats(_seq([0, 0, 1], 2))

    assert stats[1].count == 1
    assert stats[1].p_repeat is None
    assert not stats[1].defined


def test_empty_bin_reports_zero_appearance_and_undefined_repeat() -> None:
    stats = estimate_stats(_seq([0, 0], 3))

    assert [s.p_appear for s in stats] == [1.0, 0.0, 0.0]
    assert stats[0].p_repeat == 1.0
    assert stats[1].p_repeat is None
    assert stats[2].p_repeat is None


def test_single_sample_sequence() -> None:
    stats = estimate_stats(_seq([0], 1))

    assert stats[0].p_appear == 1.0
    assert stats[0].p_repeat is None


def test_pooled_stats_never_count_transitions_across_sequences() -> None:
    stats = pooled_stats([_seq([0, 0], 2, "a"), _seq([1, 1], 2, "b")])

    assert [s.p_appear for s in stats] == [0.5, 0.5]
    assert stats[0].p_repeat == 1.0
    assert stats[1].p_repeat == 1.0


def test_transition_counts_add_and_reject_mismatched_alphabets() -> None:
    a = count_transitions([0, 1, 1], 2)
    b = count_transitions([1, 1, 0], 2)
    total = a + b

    assert total.counts.tolist() == [2, 4]
    assert total.self_pairs.tolist() == [0, 2]
    with pytest.raises(ValueError, match="alphabets"):
        _ = a + count_transitions([0, 1, 2], 3)


def test_transition_counts_probabilities_mark_undefined_as_nan() -> None:
    counts = TransitionCounts(
        counts=np.array([2, 0]),
        nonterminal=np.array([1, 0]),
        self_pairs=np.array([1, 0]),
    )
    p_appear, p_repeat = counts.probabilities()

    assert p_appear.tolist() == [1.0, 0.0]
    assert p_repeat[0] == 1.0
    assert math.isnan(p_repeat[1])


def test_pooled_stats_requires_sequences() -> None:
    with pytest.raises(ValueError):
        pooled_stats([])


def test_time_series_rejects_empty_and_non_finite() -> None:
    with pytest.raises(InvalidSeriesError, match="empty"):
        TimeSeries(id="x", values=())
    with pytest.raises(InvalidSeriesError, match="index 1"):
        TimeSeries(id="x", values=(1.0, math.nan))
    with pytest.raises(InvalidSeriesError):
        TimeSeries.from_values([0.0, math.inf])


def test_symbol_sequence_rejects_out_of_range_symbols() -> None:
    with pytest.raises(InvalidSeriesError):
        _seq([0, 2], 2)
    with pytest.raises(InvalidSeriesError):
        _seq([-1], 2)


def test_breakpoint_model_requires_strictly_increasing_finite_breakpoints() -> None:
    assert BreakpointModel(breakpoints=()).alphabet_size == 1
    assert BreakpointModel(breakpoints=(1.0, 2.0)).alphabet_size == 3
    with pytest.raises(ValueError, match="strictly increasing"):
        BreakpointModel(breakpoints=(2.0, 2.0))
    with pytest.raises(ValueError, match="not finite"):
        BreakpointModel(breakpoints=(math.nan,))


def test_wasserstein_persistence_equals_repeat_minus_appearance_exactly() -> None:
    rng = np.random.default_rng(20240601)
    for _ in range(10_000):
        k = int(rng.integers(1, 6))
        length = int(rng.integers(1, 40))
        symbols = rng.integers(0, k, size=length)
        p_appear, p_repeat = count_transitions(symbols, k).probabilities()
        values = persistence_values(p_appear, p_repeat, Metric.WASSERSTEIN)
        defined = ~np.isnan(p_repeat)
        assert np.array_equal(values[defined], p_repeat[defined] - p_appear[defined])
        assert np.all(np.isneginf(values[~defined]))


def _pair_count_stats(symbols: list[int], k: int) -> list[tuple[float, float | None]]:
    n = len(symbols)
    expected: list[tuple[float, float | None]] = []
    for s in range(k):
        followed = [b for a, b in zip(symbols, symbols[1:], strict=False) if a == s]
        p_repeat = sum(b == s for b in followed) / len(followed) if followed else None
        expected.append((symbols.count(s) / n, p_repeat))
    return expected


def test_estimate_stats_matches_pair_counting() -> None:
    rng = np.random.default_rng(7)
    for _ in range(500):
        k = int(rng.integers(1, 7))
        symbols = rng.integers(0, k, size=int(rng.integers(1, 60))).tolist()
        stats = estimate_stats(_seq(symbols, k))

        assert [(s.p_appear, s.p_repeat) for s in stats] == _pair_count_stats(symbols, k)
        assert math.fsum(s.p_appear for s in stats) == pytest.approx(1.0, abs=1e-12)


def test_estimate_stats_follow_relabeling_of_the_alphabet() -> None:
    rng = np.random.default_rng(11)
    for _ in range(200):
        k = int(rng.integers(2, 7))
        symbols = rng.integers(0, k, size=int(rng.integers(2, 80)))
        perm = rng.permutation(k)
        original = estimate_stats(_seq(symbols.tolist(), k))
        relabeled = estimate_stats(_seq(perm[symbols].tolist(), k))

        for s in range(k):
            moved = relabeled[int(perm[s])]
            assert moved.p_appear == original[s].p_appear
            assert moved.p_repeat == original[s].p_repeat


def test_breakpoint_model_stores_breakpoints_as_floats_in_a_tuple() -> None:
    model = BreakpointModel(breakpoints=[1, 2.5])  # type: ignore[arg-type]

    assert model.breakpoints == (1.0, 2.5)
    assert isinstance(model.breakpoints, tuple)
    assert model == BreakpointModel(breakpoints=(1.0, 2.5))
    assert hash(model) == hash(BreakpointModel(breakpoints=(1.0, 2.5)))
