"""Per-block label quotas and size caps, applied as candidate filters.

Quotas are hard upper bounds enforced inside every strategy's selection
loop: a candidate may enter a block only while the block has remaining
capacity and remaining quota for the candidate's label.  Selection that
stalls with budget left over raises instead of emitting a violating
partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .core import ConstraintSet, ValidationError


class UnknownLabelError(ValidationError):
    """A candidate carries a label absent from the quota map."""


class InfeasibleQuotaError(ValidationError):
    """The pool cannot satisfy the configured quotas."""


@dataclass
class QuotaState:
    """Mutable remaining-quota bookkeeping for one partitioning run.

    ``remaining[b][label]`` counts how many more items with ``label``
    block b may take; ``capacity[b]`` counts remaining slots.  Owned by
    a single run, never shared.
    """

    remaining: list[dict[str, int]]
    capacity: list[int]
    strict: bool = True

    @classmethod
    def uniform(cls, quotas: Mapping[str, int], capacity: int, B: int, strict: bool = True) -> "QuotaState":
        return cls(
            remaining=[dict(quotas) for _ in range(B)],
            capacity=[int(capacity)] * int(B),
            strict=strict,
        )

    def consume(self, block: int, label: str) -> None:
        if not admissible(self, block, label):
            raise InfeasibleQuotaError(
                f"no remaining quota for label {label!r} in block {block}"
            )
        self.remaining[block][label] -= 1
        self.capacity[block] -= 1

    def block_open(self, block: int) -> bool:
        return self.capacity[block] > 0

    def demanded_labels(self, block: int) -> list[str]:
        return sorted(l for l, c in self.remaining[block].items() if c > 0)


def admissible(qs: QuotaState | None, block: int, label: str) -> bool:
    """True iff `block` still has capacity and quota for `label`.

    With no quota state configured (``qs is None``) everything is
    admissible: the disabled path never filters.
    """
    if qs is None:
        return True
    if not 0 <= block < len(qs.capacity):
        raise ValidationError(f"block index {block} out of range")
    if qs.capacity[block] <= 0:
        return False
    if label not in qs.remaining[block]:
        if qs.strict:
            raise UnknownLabelError(f"label {label!r} has no configured quota")
        return False
    return qs.remaining[block][label] > 0


def default_quotas(labels: tuple[str, ...], cons: ConstraintSet) -> QuotaState:
    """Even per-label quotas: ceil(capacity / #distinct labels) per block.

    ``cons.per_block_capacity`` must be set (strategies derive it before
    calling); see ``partition.block_capacity``.
    """
    if labels is None:
        raise ValidationError("label quotas require labels on the embedding matrix")
    if cons.per_block_capacity is None:
        raise ValidationError("default quotas require a per-block capacity")
    distinct = sorted(set(labels))
    per_label = math.ceil(cons.per_block_capacity / len(distinct))
    return QuotaState.uniform(
        {l: per_label for l in distinct}, cons.per_block_capacity, cons.B
    )


def quota_map(labels: tuple[str, ...], capacity: int) -> dict[str, int]:
    """The label->count map behind :func:`default_quotas`, for ConstraintSet."""
    distinct = sorted(set(labels))
    per_label = math.ceil(int(capacity) / len(distinct))
    return {l: per_label for l in distinct}
