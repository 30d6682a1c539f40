from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any

from ..core.types import Binning, BreakpointModel, Metric
from .files import write_text_atomic

logger = logging.getLogger(__name__)

MODEL_KEYS = ("metric", "binning", "bins", "breakpoints", "final_score")


class ModelFormatError(ValueError):
    """Raised when a model file is not valid JSON or breaks the model schema."""


def model_to_dict(model: BreakpointModel) -> dict[str, Any]:
    return {
        "metric": model.metric.value,
        "binning": model.binning.value,
        "bins": model.bins,
        "breakpoints": list(model.breakpoints),
        "final_score": model.final_score,
    }


def _is_number(value: Any) -> bool:
    return isinstance(value, int | float) and not isinstance(value, bool)


def model_from_dict(obj: Any) -> BreakpointModel:
    if not isinstance(obj, dict):
        raise ModelFormatError("model must be a JSON object")
    missing = [key for key in MODEL_KEYS if key not in obj]
    if missing:
        raise ModelFormatError(f"model is missing keys: {', '.join(missing)}")
    try:
        metric = Metric(obj["metric"])
    except ValueError as exc:
        raise ModelFormatError(f"unknown metric {obj['metric']!r}") from exc
    try:
        binning = Binning(obj["binning"])
    except ValueError as exc:
        raise ModelFormatError(f"unknown binning {obj['binning']!r}") from exc
    bins = obj["bins"]
    if not isinstance(bins, int) or isinstance(bins, bool) or bins < 1:
        raise ModelFormatError(f"'bins' must be a positive integer, got {bins!r}")
    raw_breakpoints = obj["breakpoints"]
    if not isinstance(raw_breakpoints, list) or not all(_is_number(b) for b in raw_breakpoints):
        raise ModelFormatError("'breakpoints' must be a list of numbers")
    final_score = obj["final_score"]
    if not _is_number(final_score) or not math.isfinite(final_score):
        raise ModelFormatError(f"'final_score' must be a finite number, got {final_score!r}")
    try:
        return BreakpointModel(
            breakpoints=tuple(float(b) for b in raw_breakpoints),
            metric=metric,
            binning=binning,
            bins=bins,
            final_score=float(final_score),
        )
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc


def _float_token(value: float) -> str:
    if not math.isfinite(value):
        raise ModelFormatError(f"cannot write non-finite value {value!r}")
    # 17 significant digits reload to the identical double.
    return format(value, ".17g")


def dumps_model(model: BreakpointModel) -> str:
    data = model_to_dict(model)
    breakpoints = ", ".join(_float_token(b) for b in data["breakpoints"])
    lines = [
        "{",
        f'  "metric": {json.dumps(data["metric"])},',
        f'  "binning": {json.dumps(data["binning"])},',
        f'  "bins": {data["bins"]},',
        f'  "breakpoints": [{breakpoints}],',
        f'  "final_score": {_float_token(data["final_score"])}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def save_model(model: BreakpointModel, path: Path) -> None:
    write_text_atomic(Path(path), dumps_model(model))
    logger.debug("Wrote model with %d breakpoints to %s", len(model.breakpoints), path)


def load_model(path: Path) -> BreakpointModel:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: invalid JSON ({exc})") from exc
    return model_from_dict(obj)
