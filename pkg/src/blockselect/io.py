"""File formats: embeddings in (csv / jsonl / bin), partitions out (json).

All output is canonical: dictionary keys appear in a fixed order, reals
are printed with 17 significant digits (enough to round-trip float64),
and no timestamps or environment data are embedded, so equal inputs
always produce byte-identical files.

Binary embedding format::

    magic   7 bytes  b"SUBCP1\\0"
    header  8 bytes  N, d as unsigned 32-bit little-endian
    data    N*d*4    row-major IEEE-754 binary32, little-endian
    trailer utf-8 canonical JSON: {"ids": [...], "labels": [...] | null}

The binary payload (float32) is the canonical serialization that the
64-bit FNV-1a input fingerprint is computed over.
"""

from __future__ import annotations

import csv
import json
import struct
from pathlib import Path

import numpy as np

from .core import (
    ConstraintSet,
    DimensionMismatchError,
    EmbeddingMatrix,
    Partition,
    StrategyConfig,
    ValidationError,
)
from .metrics import PartitionReport, report_as_dict

BIN_MAGIC = b"SUBCP1\x00"
SCHEMA_VERSION = "1"

FORMATS = ("csv", "jsonl", "bin")

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a digest (provenance tag, not a security feature)."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def _format_real(x: float) -> str:
    return format(float(x), ".17g")


def dumps_canonical(obj) -> str:
    """Serialize to JSON with insertion-ordered keys and .17g reals."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_real(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        parts = (f"{json.dumps(str(k))}: {dumps_canonical(v)}" for k, v in obj.items())
        return "{" + ", ".join(parts) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps_canonical(v) for v in obj) + "]"
    raise TypeError(f"cannot canonically serialize {type(obj).__name__}")


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix in FORMATS:
        return suffix
    raise ValidationError(
        f"cannot infer format from extension {suffix!r}; expected one of {FORMATS}"
    )


# ---------------------------------------------------------------------------
# loading


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _load_csv(path: Path) -> EmbeddingMatrix:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise ValidationError(f"{path}: empty csv file")
    # A data row always has a numeric second column; otherwise it is a header.
    has_header = len(rows[0]) < 2 or not _is_number(rows[0][1])
    header = rows[0] if has_header else None
    data = rows[1:] if has_header else rows
    if not data:
        raise ValidationError(f"{path}: csv file has a header but no data rows")
    if header is not None:
        has_label = header[-1].strip().lower() == "label"
    else:
        has_label = len(data[0]) > 2 and not _is_number(data[0][-1])
    width = len(data[0])
    dim = width - 2 if has_label else width - 1
    if dim < 1:
        raise ValidationError(f"{path}: no embedding columns found")
    ids: list[str] = []
    labels: list[str] = []
    values = np.empty((len(data), dim))
    for r, row in enumerate(data):
        if len(row) != width:
            raise DimensionMismatchError(
                f"{path}: ragged row for id {row[0]!r} "
                f"({len(row)} columns, expected {width})"
            )
        ids.append(row[0])
        stop = width - 1 if has_label else width
        for c, token in enumerate(row[1:stop]):
            if not _is_number(token):
                raise ValidationError(
                    f"{path}: non-numeric embedding entry {token!r} for id {row[0]!r}"
                )
            values[r, c] = float(token)
        if has_label:
            labels.append(row[-1])
    return EmbeddingMatrix(
        rows=values, ids=tuple(ids), labels=tuple(labels) if has_label else None
    )


def _load_jsonl(path: Path) -> EmbeddingMatrix:
    ids: list[str] = []
    labels: list[str] = []
    vectors: list[list[float]] = []
    any_label = False
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}:{lineno}: invalid json ({exc})") from exc
            if "id" not in obj or "embedding" not in obj:
                raise ValidationError(
                    f"{path}:{lineno}: object needs 'id' and 'embedding' fields"
                )
            vec = obj["embedding"]
            if not isinstance(vec, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in vec
            ):
                raise ValidationError(
                    f"{path}:{lineno}: non-numeric embedding entry for id {obj['id']!r}"
                )
            if vectors and len(vec) != len(vectors[0]):
                raise DimensionMismatchError(
                    f"{path}: embedding for id {obj['id']!r} has dimension "
                    f"{len(vec)}, expected {len(vectors[0])}"
                )
            ids.append(str(obj["id"]))
            vectors.append([float(v) for v in vec])
            label = obj.get("label")
            if label is not None:
                any_label = True
            labels.append("" if label is None else str(label))
    if not vectors:
        raise ValidationError(f"{path}: empty jsonl file")
    return EmbeddingMatrix(
        rows=np.asarray(vectors),
        ids=tuple(ids),
        labels=tuple(labels) if any_label else None,
    )


def _load_bin(path: Path) -> EmbeddingMatrix:
    blob = Path(path).read_bytes()
    if not blob.startswith(BIN_MAGIC):
        raise ValidationError(f"{path}: bad magic bytes, not an embedding file")
    at = len(BIN_MAGIC)
    if len(blob) < at + 8:
        raise ValidationError(f"{path}: truncated header")
    n, d = struct.unpack_from("<II", blob, at)
    at += 8
    need = n * d * 4
    if len(blob) < at + need:
        raise ValidationError(f"{path}: truncated data block")
    values = np.frombuffer(blob, dtype="<f4", count=n * d, offset=at).reshape(n, d)
    trailer = json.loads(blob[at + need :].decode("utf-8"))
    ids = trailer.get("ids")
    labels = trailer.get("labels")
    if ids is None or len(ids) != n:
        raise ValidationError(f"{path}: trailer ids missing or wrong length")
    if labels is not None and len(labels) != n:
        raise ValidationError(f"{path}: trailer labels have wrong length")
    return EmbeddingMatrix(
        rows=values.astype(np.float64),
        ids=tuple(ids),
        labels=tuple(labels) if labels is not None else None,
    )


def load_embeddings(path: str | Path, format: str | None = None) -> EmbeddingMatrix:
    """Load an embedding matrix; format inferred from the extension if omitted."""
    path = Path(path)
    fmt = format or detect_format(path)
    if fmt == "csv":
        emb = _load_csv(path)
    elif fmt == "jsonl":
        emb = _load_jsonl(path)
    elif fmt == "bin":
        emb = _load_bin(path)
    else:
        raise ValidationError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    seen: set[str] = set()
    for item_id in emb.ids:
        if item_id in seen:
            raise ValidationError(f"{path}: duplicate id {item_id!r}")
        seen.add(item_id)
    return emb


# ---------------------------------------------------------------------------
# saving


def bin_bytes(emb: EmbeddingMatrix) -> bytes:
    """Canonical binary serialization (also the fingerprint input)."""
    header = BIN_MAGIC + struct.pack("<II", emb.n, emb.dim)
    data = emb.rows.astype("<f4").tobytes(order="C")
    trailer = dumps_canonical(
        {
            "ids": list(emb.ids),
            "labels": list(emb.labels) if emb.labels is not None else None,
        }
    ).encode("utf-8")
    return header + data + trailer


def fingerprint(emb: EmbeddingMatrix) -> str:
    """Hex FNV-1a of the canonical binary serialization."""
    return format(fnv1a64(bin_bytes(emb)), "016x")


def save_embeddings(emb: EmbeddingMatrix, path: str | Path, format: str | None = None) -> None:
    path = Path(path)
    fmt = format or detect_format(path)
    if fmt == "bin":
        path.write_bytes(bin_bytes(emb))
        return
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            head = ["id"] + [f"x{c}" for c in range(emb.dim)]
            if emb.labels is not None:
                head.append("label")
            writer.writerow(head)
            for r in range(emb.n):
                row = [emb.ids[r]] + [_format_real(v) for v in emb.rows[r]]
                if emb.labels is not None:
                    row.append(emb.labels[r])
                writer.writerow(row)
        return
    if fmt == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for r in range(emb.n):
                obj = {"id": emb.ids[r], "embedding": list(emb.rows[r])}
                if emb.labels is not None:
                    obj["label"] = emb.labels[r]
                fh.write(dumps_canonical(obj) + "\n")
        return
    raise ValidationError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def partition_document(
    emb: EmbeddingMatrix,
    cons: ConstraintSet,
    cfg: StrategyConfig,
    p: Partition,
    rep: PartitionReport,
) -> dict:
    """The partition JSON document with its fixed key order."""
    blocks = []
    for b, block in enumerate(p.blocks):
        score = p.scores[b] if p.scores is not None else rep.per_block_f[b]
        blocks.append(
            {
                "block_index": b,
                "ids": [emb.ids[i] for i in block],
                "indices": list(block),
                "f_score": float(score),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "strategy": p.strategy,
        "seed": cfg.seed,
        "normalize": cfg.normalize,
        "k": cons.k,
        "B": cons.B,
        "blocks": blocks,
        "report": report_as_dict(rep),
        "input_fingerprint": fingerprint(emb),
    }


def write_partition(
    path: str | Path,
    emb: EmbeddingMatrix,
    cons: ConstraintSet,
    cfg: StrategyConfig,
    p: Partition,
    rep: PartitionReport,
) -> None:
    """Write the canonical partition JSON; byte-identical for equal inputs."""
    doc = partition_document(emb, cons, cfg, p, rep)
    Path(path).write_bytes((dumps_canonical(doc) + "\n").encode("utf-8"))


def read_partition(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError(f"{path}: not a schema version {SCHEMA_VERSION} partition file")
    if "blocks" not in doc:
        raise ValidationError(f"{path}: partition file has no blocks")
    return doc
