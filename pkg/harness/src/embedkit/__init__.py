"""Embed text classification datasets into the blockselect JSONL format."""

from .datasets import DatasetError, DatasetSpec
from .embed import embed_dataset
from .encoders import HashedEncoder, resolve_encoder

__version__ = "0.1.0"

__all__ = [
    "DatasetError",
    "DatasetSpec",
    "HashedEncoder",
    "embed_dataset",
    "resolve_encoder",
]
