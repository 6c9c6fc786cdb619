"""Dataset -> JSONL embedding files.

Output lines follow the downstream loader's JSONL contract exactly:
one object per row with ``id``, ``embedding``, and ``label``.  Ids are
``<dataset>-<split>-<row>``, embeddings are L2-normalized at write time
(re-normalization downstream is idempotent), and a sidecar
``<output>.meta.json`` records the model, dimension, and row count.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .datasets import DatasetError, DatasetSpec, extract_fields, load_rows
from .encoders import resolve_encoder

BATCH_SIZE = 32

# same-model re-runs may land on different hardware; embeddings are
# only promised stable to this cosine distance (recorded in metadata)
CROSS_HARDWARE_COSINE_TOLERANCE = 1e-5


def _encode_batched(encoder, texts: list[str]) -> np.ndarray:
    chunks = []
    dim = None
    for start in range(0, len(texts), BATCH_SIZE):
        chunk = np.asarray(encoder.encode(texts[start : start + BATCH_SIZE]), dtype=np.float64)
        if chunk.ndim != 2:
            raise DatasetError(f"encoder returned a {chunk.ndim}-d batch")
        if dim is None:
            dim = chunk.shape[1]
        elif chunk.shape[1] != dim:
            raise DatasetError(
                f"embedding dimension drift between batches: {dim} then {chunk.shape[1]}"
            )
        chunks.append(chunk)
    return np.vstack(chunks)


def _l2_normalize(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    # all-zero vectors (e.g. empty text under the hashed encoder) stay zero
    # in direction but must not divide by zero; give them a unit first axis
    zero = norms[:, 0] == 0.0
    if np.any(zero):
        vectors = vectors.copy()
        vectors[zero, 0] = 1.0
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    return vectors / norms


def embed_dataset(spec: DatasetSpec) -> Path:
    """Embed every row of the dataset; returns the output path.

    Nothing is written unless the whole dataset encodes cleanly.
    """
    name, rows = load_rows(spec)
    texts, labels = extract_fields(rows, spec.text_field, spec.label_field)
    encoder = resolve_encoder(spec.model)
    vectors = _l2_normalize(_encode_batched(encoder, texts))

    out_path = Path(spec.output)
    lines = []
    for row, (vec, label) in enumerate(zip(vectors, labels)):
        lines.append(json.dumps({
            "id": f"{name}-{spec.split}-{row}",
            "embedding": [float(v) for v in vec],
            "label": label,
        }))
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    meta = {
        "dataset": name,
        "split": spec.split,
        "model": encoder.name,
        "dimension": int(vectors.shape[1]),
        "rows": int(vectors.shape[0]),
        "normalized": True,
        "cross_hardware_cosine_tolerance": CROSS_HARDWARE_COSINE_TOLERANCE,
    }
    Path(str(out_path) + ".meta.json").write_text(
        json.dumps(meta, indent=2) + "\n", encoding="utf-8"
    )
    return out_path


def max_norm_error(path: str | Path) -> float:
    """Largest |1 - ||embedding||| in an emitted file (sanity helper)."""
    worst = 0.0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            vec = json.loads(line)["embedding"]
            worst = max(worst, abs(1.0 - math.sqrt(sum(v * v for v in vec))))
    return worst
