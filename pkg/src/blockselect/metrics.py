"""Partition scoring: per-block coverage, union coverage, and diagnostics.

Four partition-level objectives are reported (never optimized here):
``min_block`` and ``sum`` are better when larger, ``sum_plus_union``
and ``max_block`` when smaller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Partition, ValidationError
from .submodular import _entries, eval_fl

OBJECTIVES = ("min-block", "sum", "sum-plus-union", "max-block")
# +1 = maximize, -1 = minimize
OBJECTIVE_DIRECTION = {
    "min-block": +1,
    "sum": +1,
    "sum-plus-union": -1,
    "max-block": -1,
}


@dataclass(frozen=True)
class PartitionReport:
    strategy: str
    per_block_f: tuple[float, ...]
    min_f: float
    max_f: float
    sum_f: float
    union_f: float
    conditional_gains: tuple[float, ...]
    intra_block_mean_sim: tuple[float, ...]

    def objective_value(self, objective: str) -> float:
        if objective == "min-block":
            return self.min_f
        if objective == "sum":
            return self.sum_f
        if objective == "sum-plus-union":
            return self.sum_f + self.union_f
        if objective == "max-block":
            return self.max_f
        raise ValidationError(f"unknown objective {objective!r}")


def validate_partition(p: Partition, n: int) -> None:
    """Reject overlapping blocks, out-of-range indices, and empty partitions."""
    if len(p.blocks) == 0:
        raise ValidationError("partition has no blocks")
    seen: set[int] = set()
    for block in p.blocks:
        for i in block:
            if not 0 <= i < n:
                raise ValidationError(f"block index {i} out of range [0, {n})")
            if i in seen:
                raise ValidationError("blocks not disjoint")
            seen.add(i)


def _intra_mean(m: np.ndarray, block: tuple[int, ...]) -> float:
    if len(block) < 2:
        return 0.0
    idx = np.asarray(block, dtype=np.int64)
    sub = m[np.ix_(idx, idx)]
    size = len(block)
    return float((sub.sum() - np.trace(sub)) / (size * (size - 1)))


def report(S, p: Partition) -> PartitionReport:
    """Score a partition; every field derives from eval_fl on pristine S."""
    m = _entries(S)
    validate_partition(p, m.shape[0])
    per_block = tuple(eval_fl(m, b) for b in p.blocks)
    union: list[int] = [i for b in p.blocks for i in b]
    union_f = eval_fl(m, union)
    conditional = []
    for block in p.blocks:
        others = [i for b in p.blocks for i in b if i not in set(block)]
        conditional.append(union_f - eval_fl(m, others))
    return PartitionReport(
        strategy=p.strategy,
        per_block_f=per_block,
        min_f=min(per_block),
        max_f=max(per_block),
        sum_f=float(sum(per_block)),
        union_f=union_f,
        conditional_gains=tuple(conditional),
        intra_block_mean_sim=tuple(_intra_mean(m, b) for b in p.blocks),
    )


@dataclass(frozen=True)
class Comparison:
    """Reports for several partitions plus best-first rankings per objective."""

    entries: tuple[PartitionReport, ...]
    rankings: dict[str, tuple[int, ...]]


def compare(S, partitions) -> Comparison:
    """Score each partition and rank them under all four objectives.

    Rankings hold entry indices, best first; exact ties keep input order.
    """
    reports = tuple(report(S, p) for p in partitions)
    rankings: dict[str, tuple[int, ...]] = {}
    for objective in OBJECTIVES:
        sign = OBJECTIVE_DIRECTION[objective]
        order = sorted(
            range(len(reports)),
            key=lambda i: (-sign * reports[i].objective_value(objective), i),
        )
        rankings[objective] = tuple(order)
    return Comparison(entries=reports, rankings=rankings)


def report_as_dict(r: PartitionReport) -> dict:
    """Fixed key order used by the JSON writers."""
    return {
        "strategy": r.strategy,
        "per_block_f": list(r.per_block_f),
        "min_f": r.min_f,
        "max_f": r.max_f,
        "sum_f": r.sum_f,
        "union_f": r.union_f,
        "conditional_gains": list(r.conditional_gains),
        "intra_block_mean_sim": list(r.intra_block_mean_sim),
    }
