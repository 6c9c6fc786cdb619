"""Exhaustive reference optimizers for testing the greedy modules.

Everything here is deliberately plain: python loops over explicit
enumerations, no shared code with the fast paths.  Guards are hard
errors so a test can never quietly pass on a truncated enumeration.
"""

from __future__ import annotations

import itertools
import math

from .core import ConstraintSet, Partition, ValidationError
from .metrics import OBJECTIVE_DIRECTION
from .submodular import _entries

ENUMERATION_GUARD = 10**6


class EnumerationGuardError(ValidationError):
    """The instance is too large for exhaustive search."""


def fl_from_definition(S, subset) -> float:
    """Facility-location value via explicit loops (independent code path)."""
    rows = [[float(x) for x in row] for row in _entries(S)]
    n = len(rows)
    total = 0.0
    for j in range(n):
        best = 0.0
        for i in subset:
            if rows[i][j] > best:
                best = rows[i][j]
        total += best
    return total


def brute_best_subset(S, k: int) -> tuple[tuple[int, ...], float]:
    """Optimal k-subset by full enumeration; lexicographically smallest tie."""
    m = _entries(S)
    n = m.shape[0]
    k = int(k)
    if not 1 <= k <= n:
        raise ValidationError(f"subset size k={k} must lie in [1, {n}]")
    count = math.comb(n, k)
    if count > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"{count} subsets exceed the enumeration limit of {ENUMERATION_GUARD}"
        )
    rows = [[float(x) for x in row] for row in m]
    best_subset: tuple[int, ...] | None = None
    best_value = -math.inf
    for subset in itertools.combinations(range(n), k):
        value = 0.0
        for j in range(n):
            col_best = 0.0
            for i in subset:
                if rows[i][j] > col_best:
                    col_best = rows[i][j]
            value += col_best
        if value > best_value or (value == best_value and subset < best_subset):
            best_value = value
            best_subset = subset
    return best_subset, best_value


def _partition_key(blocks: tuple[tuple[int, ...], ...]) -> tuple:
    return tuple(tuple(sorted(b)) for b in blocks)


def brute_best_partition(
    S, cons: ConstraintSet, objective: str
) -> tuple[Partition, float]:
    """Optimal assignment of k chosen items into B labeled blocks.

    Enumerates choose-then-assign: every k-subset of the ground set and
    every way to drop its items into B blocks (blocks may end up empty).
    ``min-block`` and ``sum`` are maximized; ``sum-plus-union`` and
    ``max-block`` are minimized.  Exact ties keep the lexicographically
    smallest canonical block tuple.
    """
    if objective not in OBJECTIVE_DIRECTION:
        raise ValidationError(
            f"unknown objective {objective!r}; expected one of {sorted(OBJECTIVE_DIRECTION)}"
        )
    m = _entries(S)
    n = m.shape[0]
    k, B = cons.k, cons.B
    if not 1 <= k <= n:
        raise ValidationError(f"budget k={k} must lie in [1, {n}]")
    count = math.comb(n, k) * B**k
    if count > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"{count} assignments exceed the enumeration limit of {ENUMERATION_GUARD}"
        )
    sign = OBJECTIVE_DIRECTION[objective]
    rows = [[float(x) for x in row] for row in m]

    def value_of(blocks: tuple[tuple[int, ...], ...]) -> float:
        per_block = [fl_from_definition(rows, b) for b in blocks]
        if objective == "min-block":
            return min(per_block)
        if objective == "sum":
            return sum(per_block)
        if objective == "max-block":
            return max(per_block)
        union = [i for b in blocks for i in b]
        return sum(per_block) + fl_from_definition(rows, union)

    best_blocks: tuple[tuple[int, ...], ...] | None = None
    best_value = -math.inf
    for subset in itertools.combinations(range(n), k):
        for assign in itertools.product(range(B), repeat=k):
            blocks_mut: list[list[int]] = [[] for _ in range(B)]
            for item, b in zip(subset, assign):
                blocks_mut[b].append(item)
            blocks = tuple(tuple(b) for b in blocks_mut)
            signed = sign * value_of(blocks)
            if signed > best_value or (
                signed == best_value
                and _partition_key(blocks) < _partition_key(best_blocks)
            ):
                best_value = signed
                best_blocks = blocks
    part = Partition(
        blocks=_partition_key(best_blocks), strategy=f"oracle-{objective}"
    )
    return part, sign * best_value
