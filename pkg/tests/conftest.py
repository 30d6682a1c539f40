from __future__ import annotations

from pathlib import Path

import pytest

from persist_discretizer.core.types import TimeSeries
from persist_discretizer.evaluation.synthetic import table_one_series

FIXTURES_DIR = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture
def square_wave_path() -> Path:
    return FIXTURES_DIR / "square_wave.tsv"


@pytest.fixture
def constant_path() -> Path:
    return FIXTURES_DIR / "constant.tsv"


@pytest.fixture
def mixed_lengths_path() -> Path:
    return FIXTURES_DIR / "mixed_lengths.csv"


@pytest.fixture
def table_one() -> TimeSeries:
    return table_one_series()
