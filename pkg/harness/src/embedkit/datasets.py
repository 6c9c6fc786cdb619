"""Dataset resolution: local files first, the hub as a fallback.

A dataset reference is either a path to a csv / tsv / json / jsonl file
(the dataset name is then the file stem) or, when the ``datasets``
package is installed, a hub dataset name such as ``sst2``.  Rows come
back as plain dicts; field selection and validation happen here so
errors can name the fields that actually exist.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class DatasetSpec:
    dataset: str
    split: str = "train"
    text_field: str = "text"
    label_field: str = "label"
    model: str = "hash:256"
    output: str = "embeddings.jsonl"


def _rows_from_file(path: Path) -> list[dict]:
    suffix = path.suffix.lower()
    if suffix in (".csv", ".tsv"):
        delim = "\t" if suffix == ".tsv" else ","
        with open(path, newline="", encoding="utf-8") as fh:
            return list(csv.DictReader(fh, delimiter=delim))
    if suffix == ".jsonl":
        rows = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rows.append(json.loads(line))
        return rows
    if suffix == ".json":
        data = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(data, list):
            raise DatasetError(f"{path}: expected a json array of objects")
        return data
    raise DatasetError(f"{path}: unsupported dataset file type {suffix!r}")


def load_rows(spec: DatasetSpec) -> tuple[str, list[dict]]:
    """Return (dataset name, rows).  Local paths win over hub names."""
    path = Path(spec.dataset)
    if path.exists():
        return path.stem, _rows_from_file(path)
    try:
        from datasets import load_dataset
    except ImportError:
        raise DatasetError(
            f"dataset {spec.dataset!r} is not a local file and the 'datasets' "
            "package is not installed"
        ) from None
    try:
        data = load_dataset(spec.dataset, split=spec.split)
    except Exception as exc:
        raise DatasetError(f"could not resolve dataset {spec.dataset!r}: {exc}") from exc
    return spec.dataset.replace("/", "-"), [dict(row) for row in data]


def extract_fields(
    rows: list[dict], text_field: str, label_field: str
) -> tuple[list[str], list[str]]:
    """Pull text and label columns, naming the available fields on a miss."""
    if not rows:
        raise DatasetError("dataset is empty")
    available = sorted(rows[0].keys())
    for field in (text_field, label_field):
        if field not in rows[0]:
            raise DatasetError(
                f"field {field!r} not found; available fields: {available}"
            )
    texts = [str(row[text_field]) for row in rows]
    labels = [str(row[label_field]) for row in rows]
    return texts, labels
