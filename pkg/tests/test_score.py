from __future__ import annotations

import math

import numpy as np
import pytest

from persist_discretizer.core.types import Metric, SymbolStats
from persist_discretizer.discretize.score import (
    Aggregation,
    TwoPointDist,
    aggregate_values,
    kl,
    persistence_aggregate,
    persistence_symbol,
    skl,
    wasserstein,
)


def _d(p1: float) -> TwoPointDist:
    return TwoPointDist(p1)


def _stats(symbol: int, p_appear: float, p_repeat: float | None) -> SymbolStats:
    return SymbolStats(symbol=symbol, p_appear=p_appear, p_repeat=p_repeat, count=1)


# (P, P_r) per symbol for the two candidate breakpoints of the motivating example.
BREAKPOINT_1 = [_stats(0, 0.97, 0.99), _stats(1, 0.03, 0.62)]
BREAKPOINT_2 = [_stats(0, 0.54, 0.92), _stats(1, 0.47, 0.94)]


def test_kl_reference_values() -> None:
    assert kl(_d(0.97), _d(0.99)) == pytest.approx(0.013162, abs=1e-5)
    assert kl(_d(0.03), _d(0.62)) == pytest.approx(0.818165, abs=1e-5)


def test_kl_clamps_degenerate_probabilities() -> None:
    value = kl(_d(0.0), _d(1.0))

    assert math.isfinite(value)
    assert value > 20
    assert kl(_d(1.0), _d(1.0)) == 0.0


def test_kl_log_base_rescales() -> None:
    natural = kl(_d(0.2), _d(0.7))

    assert kl(_d(0.2), _d(0.7), base=2) == pytest.approx(natural / math.log(2))


def test_wasserstein_reference_value() -> None:
    assert wasserstein(_d(0.03), _d(0.62)) == pytest.approx(0.59)


def test_two_point_dist_validates_range() -> None:
    assert _d(0.25).p2 == 0.75
    with pytest.raises(ValueError):
        _d(1.5)


def test_metric_properties_on_random_triples() -> None:
    rng = np.random.default_rng(7)
    for p1, q1, r1 in rng.random((10_000, 3)):
        p, q, r = _d(float(p1)), _d(float(q1)), _d(float(r1))
        assert kl(p, q) >= 0.0
        assert kl(p, p) == 0.0
        assert skl(p, q) == skl(q, p)
        assert wasserstein(p, q) == wasserstein(q, p)
        assert 0.0 <= wasserstein(p, q) <= 1.0
        assert wasserstein(p, r) <= wasserstein(p, q) + wasserstein(q, r) + 1e-15


def test_kl_ordering_is_invariant_to_log_base() -> None:
    rng = np.random.default_rng(11)
    for a, b, c, d in rng.random((1_000, 4)):
        natural = skl(_d(a), _d(b)) - skl(_d(c), _d(d))
        binary = skl(_d(a), _d(b), base=2) - skl(_d(c), _d(d), base=2)
        if abs(natural) > 1e-12:
            assert np.sign(natural) == np.sign(binary)


def test_persistence_sign_follows_repeat_minus_appearance() -> None:
    assert persistence_symbol(_stats(0, 0.47, 0.94), Metric.WASSERSTEIN) == pytest.approx(0.47)
    assert persistence_symbol(_stats(0, 0.6, 0.2), Metric.WASSERSTEIN) == pytest.approx(-0.4)
    assert persistence_symbol(_stats(0, 0.6, 0.2), Metric.KL) < 0
    assert persistence_symbol(_stats(0, 0.5, 0.5), Metric.KL) == 0.0


def test_undefined_repeat_rejects_the_symbol_and_the_aggregate() -> None:
    stats = [_stats(0, 0.9, 0.95), _stats(1, 0.1, None)]

    assert persistence_symbol(stats[1], Metric.KL) == -math.inf
    assert persistence_aggregate(stats, Metric.WASSERSTEIN) == -math.inf


def test_table_one_aggregates_prefer_different_breakpoints() -> None:
    kl_1 = persistence_aggregate(BREAKPOINT_1, Metric.KL)
    kl_2 = persistence_aggregate(BREAKPOINT_2, Metric.KL)
    w_1 = persistence_aggregate(BREAKPOINT_1, Metric.WASSERSTEIN)
    w_2 = persistence_aggregate(BREAKPOINT_2, Metric.WASSERSTEIN)

    assert kl_1 == pytest.approx(0.5906, abs=0.02)
    assert kl_2 == pytest.approx(0.5542, abs=0.02)
    assert w_1 == pytest.approx(0.305, abs=1e-9)
    assert w_2 == pytest.approx(0.425, abs=1e-9)
    assert kl_1 > kl_2
    assert w_2 > w_1


def test_aggregation_alternatives() -> None:
    values = [0.2, 0.6]

    assert aggregate_values(values) == pytest.approx(0.4)
    assert aggregate_values(values, aggregation=Aggregation.MIN) == 0.2
    assert aggregate_values(values, [0.75, 0.25], Aggregation.WEIGHTED) == pytest.approx(0.3)
    with pytest.raises(ValueError):
        aggregate_values(values, aggregation="weighted")
    with pytest.raises(ValueError):
        aggregate_values([])
