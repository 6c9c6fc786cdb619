"""Hard label quotas inside the selection loop.

The same pool is partitioned twice: unconstrained selection drifts with
whatever geometry favors, quota-filtered selection lands exactly on the
configured per-block label counts.  Infeasible quotas fail loudly.
"""

import numpy as np

from blockselect import (
    ConstraintSet,
    EmbeddingMatrix,
    InfeasibleQuotaError,
    StrategyConfig,
    block_capacity,
    run_strategy,
)
from blockselect.balance import quota_map

rng = np.random.default_rng(21)
# two blobs; the first is mostly "pos", the second mostly "neg"
rows = np.vstack([
    np.array([3.0, 0.0]) + 0.7 * rng.standard_normal((10, 2)),
    np.array([0.0, 3.0]) + 0.7 * rng.standard_normal((10, 2)),
])
labels = tuple(["pos"] * 8 + ["neg"] * 2 + ["neg"] * 8 + ["pos"] * 2)
emb = EmbeddingMatrix(
    rows=rows, ids=tuple(f"s{i}" for i in range(20)), labels=labels
)


def block_label_counts(partition):
    for b, block in enumerate(partition.blocks):
        got = [emb.labels[i] for i in block]
        yield b, got.count("pos"), got.count("neg")


cfg = StrategyConfig(strategy="global-diverse", seed=0)

plain = run_strategy(emb, ConstraintSet(k=8, B=2), cfg)
print("unconstrained global-diverse:")
for b, pos, neg in block_label_counts(plain):
    print(f"  block {b}: {pos} pos / {neg} neg")

cap = block_capacity("global-diverse", 8, 2)
balanced_cons = ConstraintSet(
    k=8, B=2, per_block_capacity=cap, label_quotas=quota_map(labels, cap)
)
balanced = run_strategy(emb, balanced_cons, cfg)
print(f"with per-block quotas {dict(balanced_cons.label_quotas)}:")
for b, pos, neg in block_label_counts(balanced):
    print(f"  block {b}: {pos} pos / {neg} neg")

# demanding more of a label than the pool holds fails with the label named
scarce = EmbeddingMatrix(
    rows=rows,
    ids=emb.ids,
    labels=tuple(["pos"] * 19 + ["neg"]),
)
try:
    run_strategy(scarce, balanced_cons, cfg)
except InfeasibleQuotaError as exc:
    print(f"infeasible pool rejected: {exc}")
