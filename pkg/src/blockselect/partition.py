"""The four block-construction strategies.

All four are pure functions from (similarity matrix, constraints) to a
:class:`~blockselect.core.Partition`; the only randomness in the whole
pipeline lives in k-means initialization for the local-diverse strategy.
They span a spectrum:

* ``global-diverse``   -- every block independently approximates
  full-dataset coverage; each step feeds the block whose coverage total
  is currently lowest.
* ``global-local-diverse`` -- blocks are built sequentially and score
  candidates by (gain vs. union-of-previous-blocks coverage) + (gain
  vs. current block), trading global coverage against inter-block
  complementarity.
* ``local-diverse``    -- cluster first, then run plain greedy inside
  each cluster (one block per cluster).
* ``local-coherent``   -- greedily seed B spread-out representatives,
  then fill each block with the candidates of *least* gain against it
  (most redundant = most coherent).

Per-block capacities differ by strategy: global-diverse has none (the
lowest-coverage rule balances sizes), global-local-diverse and
local-diverse use ceil(k/B), local-coherent uses floor(k/B).  Every
strategy keeps the total selected count <= k, so budgets that do not
divide evenly leave the trailing block(s) short.
"""

from __future__ import annotations

import math

import numpy as np

from . import balance as _balance
from .clustering import kmeans
from .core import (
    STRATEGIES,
    ConstraintSet,
    EmbeddingMatrix,
    Partition,
    StrategyConfig,
    UnknownStrategyError,
    ValidationError,
    build_similarity,
    l2_normalize_rows,
    validate_inputs,
)
from .submodular import _entries, eval_fl


def block_capacity(strategy: str, k: int, B: int) -> int:
    """Per-block capacity rule for each strategy (used for quota sizing)."""
    if strategy == "local-coherent":
        return max(1, k // B)
    # global-diverse carries no hard cap of its own; ceil(k/B) is used
    # when quota filtering needs one.
    return math.ceil(k / B)


def _admissible(candidates, quotas, labels, block):
    """Filter a sorted candidate list through the quota state (no-op when off)."""
    if quotas is None:
        return candidates
    return [i for i in candidates if _balance.admissible(quotas, block, labels[i])]


def _stall_error(quotas, labels, remaining, blocks_open) -> _balance.InfeasibleQuotaError:
    needed = sorted(
        {l for b in blocks_open for l in quotas.demanded_labels(b)}
    )
    available = sorted({labels[i] for i in remaining})
    return _balance.InfeasibleQuotaError(
        f"quota infeasible: blocks still demand label(s) {needed} "
        f"but the remaining pool only offers {available}"
    )


def partition_global_diverse(
    S, cons: ConstraintSet, quotas=None, labels=None
) -> Partition:
    """Feed the lowest-coverage block its best remaining candidate, k times.

    Block coverages are independent; disjointness comes from the shared
    remaining pool.  Ties (equal coverage totals, equal gains) resolve
    to the lowest block index / lowest candidate index.
    """
    m = _entries(S)
    n = m.shape[0]
    k, B = cons.k, cons.B
    best = np.zeros((B, n))
    blocks: list[list[int]] = [[] for _ in range(B)]
    remaining = list(range(n))
    selected = 0
    while remaining and selected < k:
        order = sorted(range(B), key=lambda b: (best[b].sum(), b))
        target = -1
        cand: list[int] = []
        for b in order:
            if quotas is not None and not quotas.block_open(b):
                continue
            cand = _admissible(remaining, quotas, labels, b)
            if cand:
                target = b
                break
        if target < 0:
            open_blocks = [b for b in range(B) if quotas.block_open(b)]
            if open_blocks:
                raise _stall_error(quotas, labels, remaining, open_blocks)
            break  # every block at capacity
        gains = np.maximum(m[cand] - best[target][None, :], 0.0).sum(axis=1)
        chosen = cand[int(np.argmax(gains))]
        blocks[target].append(chosen)
        best[target] = np.maximum(best[target], m[chosen])
        remaining.remove(chosen)
        if quotas is not None:
            quotas.consume(target, labels[chosen])
        selected += 1
    return Partition(blocks=tuple(tuple(b) for b in blocks), strategy="global-diverse")


def partition_global_local_diverse(
    S, cons: ConstraintSet, quotas=None, labels=None
) -> Partition:
    """Sequential blocks scored by union-coverage gain plus own-block gain.

    ``sim_union`` accumulates the coverage of all completed blocks; the
    working block's candidates maximize gain against
    max(sim_union, sim_block) plus gain against sim_block alone.  Each
    block closes at ceil(k/B) items (or when the pool or budget runs
    out), then merges into the union coverage.
    """
    m = _entries(S)
    n = m.shape[0]
    k, B = cons.k, cons.B
    cap = math.ceil(k / B)
    sim_union = np.zeros(n)
    blocks: list[list[int]] = []
    remaining = list(range(n))
    selected = 0
    stalled = False
    for b in range(B):
        sim_block = np.zeros(n)
        block: list[int] = []
        while len(block) < cap and remaining and selected < k:
            cand = _admissible(remaining, quotas, labels, b)
            if not cand:
                stalled = True
                break
            merged = np.maximum(sim_union, sim_block)
            gains = (
                np.maximum(m[cand] - merged[None, :], 0.0).sum(axis=1)
                + np.maximum(m[cand] - sim_block[None, :], 0.0).sum(axis=1)
            )
            chosen = cand[int(np.argmax(gains))]
            block.append(chosen)
            sim_block = np.maximum(sim_block, m[chosen])
            remaining.remove(chosen)
            if quotas is not None:
                quotas.consume(b, labels[chosen])
            selected += 1
        sim_union = np.maximum(sim_union, sim_block)
        blocks.append(block)
    if stalled and selected < k and remaining:
        raise _stall_error(quotas, labels, remaining, list(range(B)))
    return Partition(
        blocks=tuple(tuple(b) for b in blocks), strategy="global-local-diverse"
    )


def partition_local_diverse(
    S,
    emb: EmbeddingMatrix,
    cons: ConstraintSet,
    seed: int = 0,
    quotas=None,
    labels=None,
) -> Partition:
    """One block per cluster: plain greedy restricted to cluster members.

    Uses ``cons.cluster_of`` when provided, otherwise k-means with B
    clusters on the embedding rows.  Gains are evaluated over the full
    ground set (all columns); only the candidate pool is restricted.
    Block b's budget is min(ceil(k/B), cluster size, remaining budget).
    """
    m = _entries(S)
    n = m.shape[0]
    k, B = cons.k, cons.B
    if cons.cluster_of is not None:
        cluster_of = np.asarray(cons.cluster_of, dtype=np.int64)
    else:
        cluster_of = kmeans(emb, B, seed=seed).cluster_of
    cap = math.ceil(k / B)
    blocks: list[list[int]] = []
    selected = 0
    stalled = False
    for b in range(B):
        members = [int(i) for i in np.where(cluster_of == b)[0]]
        if not members:
            raise ValidationError(f"cluster {b} is empty")
        budget = min(cap, len(members), k - selected)
        best = np.zeros(n)
        block: list[int] = []
        pool = list(members)
        while len(block) < budget and pool:
            cand = _admissible(pool, quotas, labels, b)
            if not cand:
                stalled = True
                break
            gains = np.maximum(m[cand] - best[None, :], 0.0).sum(axis=1)
            chosen = cand[int(np.argmax(gains))]
            block.append(chosen)
            best = np.maximum(best, m[chosen])
            pool.remove(chosen)
            if quotas is not None:
                quotas.consume(b, labels[chosen])
            selected += 1
        blocks.append(block)
    if stalled and selected < k:
        raise _stall_error(
            quotas, labels, [i for i in range(n) if all(i not in bl for bl in blocks)],
            list(range(B)),
        )
    return Partition(blocks=tuple(tuple(b) for b in blocks), strategy="local-diverse")


def partition_local_coherent(
    S, cons: ConstraintSet, quotas=None, labels=None
) -> Partition:
    """Seed B spread-out representatives, then densify each block.

    Phase 1 greedily picks B seeds against a shared coverage (identical
    to ``greedy_select(S, B)``).  Phase 2 grows each block to
    floor(k/B) items by repeatedly taking the remaining candidate with
    the *smallest* clipped gain against that block's coverage; the
    chosen row is zeroed in a working copy of S, as the selection is
    meant to consume it.  Reported scores always use the pristine S.
    """
    m = _entries(S)
    n = m.shape[0]
    k, B = cons.k, cons.B
    size = max(1, k // B)
    remaining = list(range(n))
    shared = np.zeros(n)
    seeds: list[int] = []
    for b in range(B):
        cand = _admissible(remaining, quotas, labels, b)
        if not cand:
            raise _stall_error(quotas, labels, remaining, [b])
        gains = np.maximum(m[cand] - shared[None, :], 0.0).sum(axis=1)
        chosen = cand[int(np.argmax(gains))]
        seeds.append(chosen)
        shared = np.maximum(shared, m[chosen])
        remaining.remove(chosen)
        if quotas is not None:
            quotas.consume(b, labels[chosen])
    work = m.copy()
    blocks: list[list[int]] = []
    stalled = False
    for b in range(B):
        block = [seeds[b]]
        cover = np.maximum(m[seeds[b]], 0.0)
        for _ in range(size - 1):
            if not remaining:
                break
            cand = _admissible(remaining, quotas, labels, b)
            if not cand:
                stalled = True
                break
            gains = np.maximum(work[cand] - cover[None, :], 0.0).sum(axis=1)
            chosen = cand[int(np.argmin(gains))]
            block.append(chosen)
            cover = np.maximum(cover, m[chosen])
            work[chosen, :] = 0.0
            remaining.remove(chosen)
            if quotas is not None:
                quotas.consume(b, labels[chosen])
        blocks.append(block)
    if stalled and remaining:
        raise _stall_error(quotas, labels, remaining, list(range(B)))
    return Partition(blocks=tuple(tuple(b) for b in blocks), strategy="local-coherent")


def random_partition(n: int, cons: ConstraintSet, seed: int = 0) -> Partition:
    """Uniform-random disjoint baseline: k random items split evenly."""
    rng = np.random.default_rng(int(seed))
    picks = [int(i) for i in rng.permutation(n)[: cons.k]]
    base, extra = divmod(cons.k, cons.B)
    blocks = []
    at = 0
    for b in range(cons.B):
        size = base + (1 if b < extra else 0)
        blocks.append(tuple(picks[at : at + size]))
        at += size
    return Partition(blocks=tuple(blocks), strategy="random")


def run_strategy(
    emb: EmbeddingMatrix, cons: ConstraintSet, cfg: StrategyConfig
) -> Partition:
    """Validate, build the similarity matrix, dispatch, and score.

    Attaches the per-block facility-location scores and the strategy
    tag.  When ``cons.label_quotas`` is set, balance filtering applies
    inside the selection loop (labels must then be present).
    """
    validate_inputs(emb, cons)
    if cfg.strategy not in STRATEGIES:
        raise UnknownStrategyError(f"unknown strategy {cfg.strategy!r}")
    S = build_similarity(emb, normalize=cfg.normalize)

    quotas = None
    labels = None
    if cons.label_quotas is not None:
        if emb.labels is None:
            raise ValidationError("label quotas configured but the input has no labels")
        labels = emb.labels
        cap = cons.per_block_capacity
        if cap is None:
            cap = block_capacity(cfg.strategy, cons.k, cons.B)
        quotas = _balance.QuotaState.uniform(cons.label_quotas, cap, cons.B)

    if cfg.strategy == "global-diverse":
        part = partition_global_diverse(S, cons, quotas=quotas, labels=labels)
    elif cfg.strategy == "global-local-diverse":
        part = partition_global_local_diverse(S, cons, quotas=quotas, labels=labels)
    elif cfg.strategy == "local-diverse":
        emb_used = emb
        if cfg.normalize:
            emb_used = EmbeddingMatrix(
                rows=l2_normalize_rows(emb.rows, emb.ids),
                ids=emb.ids,
                labels=emb.labels,
            )
        part = partition_local_diverse(
            S, emb_used, cons, seed=cfg.seed, quotas=quotas, labels=labels
        )
    else:
        part = partition_local_coherent(S, cons, quotas=quotas, labels=labels)

    scores = tuple(eval_fl(S, b) for b in part.blocks)
    return Partition(blocks=part.blocks, strategy=part.strategy, scores=scores)
