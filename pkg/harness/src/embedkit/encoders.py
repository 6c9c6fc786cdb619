"""Sentence encoders behind a single `encode(texts) -> array` interface.

Two backends:

* ``hash:<dim>`` — a dependency-free hashed bag-of-tokens encoder.
  Tokens are hashed into ``dim`` signed buckets, so the output is
  bit-reproducible on any machine.  Useful as an offline default and
  for tests; it is a crude featurizer, not a semantic model.
* anything else — treated as a sentence-transformers model name and
  loaded lazily, e.g. ``sentence-transformers/all-MiniLM-L6-v2``.
"""

from __future__ import annotations

import hashlib
import re

import numpy as np

_TOKEN = re.compile(r"[\w']+")


class HashedEncoder:
    """Deterministic hashed bag-of-tokens embedding."""

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("hashed encoder dimension must be positive")
        self.dim = int(dim)
        self.name = f"hash:{self.dim}"

    def _bucket(self, token: str) -> tuple[int, float]:
        digest = hashlib.md5(token.encode("utf-8")).digest()
        index = int.from_bytes(digest[:4], "little") % self.dim
        sign = 1.0 if digest[4] % 2 == 0 else -1.0
        return index, sign

    def encode(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim))
        for row, text in enumerate(texts):
            for token in _TOKEN.findall(text.lower()):
                index, sign = self._bucket(token)
                out[row, index] += sign
        return out


class SentenceTransformerEncoder:
    """Thin wrapper around a lazily loaded sentence-transformers model."""

    def __init__(self, model_name: str):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise RuntimeError(
                f"model {model_name!r} needs the sentence-transformers package; "
                "install it or use a 'hash:<dim>' encoder"
            ) from exc
        self.name = model_name
        self._model = SentenceTransformer(model_name)

    def encode(self, texts: list[str]) -> np.ndarray:
        return np.asarray(
            self._model.encode(texts, convert_to_numpy=True, show_progress_bar=False),
            dtype=np.float64,
        )


def resolve_encoder(model_name: str):
    if model_name.startswith("hash:"):
        return HashedEncoder(int(model_name.split(":", 1)[1]))
    return SentenceTransformerEncoder(model_name)
