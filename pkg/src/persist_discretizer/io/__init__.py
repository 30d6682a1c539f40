from __future__ import annotations

from .dataset import (
    DatasetFormat,
    DatasetFormatError,
    dumps_dataset,
    load_dataset,
    load_symbols,
    save_dataset,
    save_symbols,
)
from .files import write_text_atomic
from .model_file import (
    ModelFormatError,
    dumps_model,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
)

__all__ = [
    "DatasetFormat",
    "DatasetFormatError",
    "ModelFormatError",
    "dumps_dataset",
    "dumps_model",
    "load_dataset",
    "load_model",
    "load_symbols",
    "model_from_dict",
    "model_to_dict",
    "save_dataset",
    "save_model",
    "save_symbols",
    "write_text_atomic",
]
