"""File formats and the command-line pipeline.

Round-trips an embedding set through all three on-disk formats, then
drives the CLI end to end: partition -> score -> compare, showing the
fingerprint check that ties a partition file to its input.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from blockselect import EmbeddingMatrix
from blockselect.io import fingerprint, load_embeddings, save_embeddings

workdir = Path(tempfile.mkdtemp(prefix="blockselect-demo-"))
rng = np.random.default_rng(5)
rows = rng.standard_normal((12, 4)).astype(np.float32).astype(np.float64)
emb = EmbeddingMatrix(
    rows=rows,
    ids=tuple(f"doc{i}" for i in range(12)),
    labels=tuple("ab"[i % 2] for i in range(12)),
)

for fmt in ("csv", "jsonl", "bin"):
    path = workdir / f"pool.{fmt}"
    save_embeddings(emb, path)
    back = load_embeddings(path)
    drift = float(np.max(np.abs(back.rows - emb.rows)))
    print(f"{fmt:>5}: {path.stat().st_size:5d} bytes, reload drift {drift:.2e}")

print("input fingerprint:", fingerprint(emb))


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "blockselect.cli", *args],
        capture_output=True, text=True,
    )
    if proc.returncode != 0:
        raise SystemExit(f"cli failed ({proc.returncode}): {proc.stderr}")
    return proc.stdout


pool = workdir / "pool.bin"
part = workdir / "partition.json"
run_cli(
    "partition", "--input", str(pool), "--strategy", "global-diverse",
    "--k", "8", "--blocks", "2", "--output", str(part),
)
doc = json.loads(part.read_text())
print("partition blocks:", [b["ids"] for b in doc["blocks"]])

scored = json.loads(run_cli("score", "--input", str(pool), "--partition", str(part)))
print("rescored min_f / union_f:", scored["min_f"], "/", scored["union_f"])

table = json.loads(run_cli(
    "compare", "--input", str(pool), "--k", "8", "--blocks", "2",
))
print("min-block ranking:", table["rankings"]["min-block"])
