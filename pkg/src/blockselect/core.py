"""Shared domain types and input validation.

The library works on a small vocabulary of immutable value objects: an
embedding matrix (the ground set), a similarity matrix derived from it,
a running per-item coverage vector, block partitions, and the
constraint/configuration records that drive selection.  All numeric
state is float64 internally regardless of input precision so that
reference recomputations agree with the fast paths at tight tolerances.

Coverage convention: a similarity below zero never contributes.  The
coverage of item j under a selection G is ``max(0, max_{i in G} S[i, j])``
(zero for the empty selection), and all gains are clipped at zero
accordingly.  This keeps the objective monotone and submodular even
when the similarity matrix has negative entries, and makes incremental
gains agree exactly with full re-evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

STRATEGIES = (
    "global-diverse",
    "global-local-diverse",
    "local-diverse",
    "local-coherent",
)

SYMMETRY_ATOL = 1e-6


class ValidationError(ValueError):
    """Base class for every rejected input."""


class DimensionMismatchError(ValidationError):
    """Row lengths, id counts, or label counts disagree."""


class NonFiniteError(ValidationError):
    """An embedding or similarity entry is NaN or infinite."""


class DuplicateIdError(ValidationError):
    """Two items share an identifier."""


class BudgetError(ValidationError):
    """Selection budget k exceeds the ground set size."""


class BlockCountError(ValidationError):
    """Block count B is zero or exceeds the budget k."""


class ZeroNormRowError(ValidationError):
    """A row cannot be L2-normalized because its norm is zero."""


class UnknownStrategyError(ValidationError):
    """Strategy tag is not one of the four defined values."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class EmbeddingMatrix:
    """N items as d-dimensional real vectors with ids and optional labels."""

    rows: np.ndarray
    ids: tuple[str, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.float64)
        if rows.ndim != 2:
            raise DimensionMismatchError(
                f"embedding rows must form a 2-D matrix, got ndim={rows.ndim}"
            )
        ids = tuple(str(i) for i in self.ids)
        if len(ids) != rows.shape[0]:
            raise DimensionMismatchError(
                f"{len(ids)} ids for {rows.shape[0]} embedding rows"
            )
        labels = self.labels
        if labels is not None:
            labels = tuple(str(l) for l in labels)
            if len(labels) != rows.shape[0]:
                raise DimensionMismatchError(
                    f"{len(labels)} labels for {rows.shape[0]} embedding rows"
                )
        object.__setattr__(self, "rows", _frozen(rows))
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True)
class SimilarityMatrix:
    """Square symmetric matrix of pairwise similarity scores."""

    entries: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchError(
                f"similarity matrix must be square, got shape {entries.shape}"
            )
        if not np.all(np.isfinite(entries)):
            raise NonFiniteError("similarity matrix contains non-finite entries")
        if not np.allclose(entries, entries.T, rtol=0.0, atol=SYMMETRY_ATOL):
            raise ValidationError(
                f"similarity matrix is not symmetric within {SYMMETRY_ATOL}"
            )
        object.__setattr__(self, "entries", _frozen(entries))
        object.__setattr__(self, "n", entries.shape[0])


@dataclass(frozen=True)
class CoverageState:
    """Per-item best similarity achieved by an ordered selection.

    ``best_sim[j]`` is the clipped running maximum ``max(0, max_i S[i, j])``
    over the selected rows, starting from all zeros for the empty
    selection.  It is non-decreasing under insertion and independent of
    insertion order.
    """

    best_sim: np.ndarray
    selected: tuple[int, ...] = ()

    def __post_init__(self):
        best = np.array(self.best_sim, dtype=np.float64)
        if best.ndim != 1:
            raise DimensionMismatchError("coverage vector must be 1-D")
        object.__setattr__(self, "best_sim", _frozen(best))
        object.__setattr__(self, "selected", tuple(int(i) for i in self.selected))

    @classmethod
    def empty(cls, n: int) -> "CoverageState":
        return cls(best_sim=np.zeros(n), selected=())


@dataclass(frozen=True)
class Partition:
    """Ordered sequence of disjoint index blocks produced by one strategy."""

    blocks: tuple[tuple[int, ...], ...]
    strategy: str
    scores: tuple[float, ...] | None = None

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.scores is not None:
            object.__setattr__(
                self, "scores", tuple(float(s) for s in self.scores)
            )

    @property
    def total_selected(self) -> int:
        return sum(len(b) for b in self.blocks)


@dataclass(frozen=True)
class ConstraintSet:
    """Budget and block constraints: the admissible-partition description.

    ``per_block_capacity`` is optional; when unset each strategy derives
    its own capacity (see ``partition.block_capacity``).  ``label_quotas``
    maps label -> per-block cap and turns on balance filtering.
    ``cluster_of`` optionally fixes the cluster assignment used by the
    local-diverse strategy.
    """

    k: int
    B: int
    per_block_capacity: int | None = None
    label_quotas: Mapping[str, int] | None = None
    cluster_of: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "B", int(self.B))
        if self.per_block_capacity is not None:
            object.__setattr__(
                self, "per_block_capacity", int(self.per_block_capacity)
            )
        if self.label_quotas is not None:
            object.__setattr__(
                self,
                "label_quotas",
                {str(k): int(v) for k, v in dict(self.label_quotas).items()},
            )
        if self.cluster_of is not None:
            cids = np.array(self.cluster_of, dtype=np.int64)
            object.__setattr__(self, "cluster_of", _frozen(cids))


@dataclass(frozen=True)
class StrategyConfig:
    """Which strategy to run and the knobs shared by all of them."""

    strategy: str
    seed: int = 0
    normalize: bool = True
    tie_break: str = "lowest-index"

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise UnknownStrategyError(
                f"unknown strategy {self.strategy!r}; expected one of {', '.join(STRATEGIES)}"
            )
        seed = int(self.seed)
        if not 0 <= seed < 2**64:
            raise ValidationError("seed must fit in an unsigned 64-bit integer")
        object.__setattr__(self, "seed", seed)
        if self.tie_break != "lowest-index":
            raise ValidationError(
                f"unsupported tie_break rule {self.tie_break!r}; only 'lowest-index' is defined"
            )


def validate_inputs(
    emb: EmbeddingMatrix, cons: ConstraintSet
) -> tuple[EmbeddingMatrix, ConstraintSet]:
    """Check every type invariant; return the inputs unchanged on success.

    Raises a distinct :class:`ValidationError` subclass per failure mode
    so callers (and the CLI) can name the offending input precisely.
    """
    if emb.n < 1 or emb.dim < 1:
        raise DimensionMismatchError(
            f"embedding matrix must be at least 1x1, got {emb.n}x{emb.dim}"
        )
    if not np.all(np.isfinite(emb.rows)):
        bad = int(np.argwhere(~np.isfinite(emb.rows))[0][0])
        raise NonFiniteError(f"non-finite embedding entry in row id {emb.ids[bad]!r}")
    seen: dict[str, int] = {}
    for idx, item_id in enumerate(emb.ids):
        if item_id in seen:
            raise DuplicateIdError(
                f"duplicate id {item_id!r} at rows {seen[item_id]} and {idx}"
            )
        seen[item_id] = idx
    if cons.B < 1:
        raise BlockCountError("block count must be at least 1")
    if cons.k < cons.B:
        raise BlockCountError("more blocks than budget")
    if cons.k > emb.n:
        raise BudgetError("budget exceeds ground set")
    if cons.per_block_capacity is not None and cons.per_block_capacity < 1:
        raise ValidationError("per-block capacity must be at least 1")
    if cons.label_quotas is not None:
        if any(v < 0 for v in cons.label_quotas.values()):
            raise ValidationError("label quotas must be non-negative")
        if cons.per_block_capacity is not None:
            total = sum(cons.label_quotas.values())
            if total < cons.per_block_capacity:
                raise ValidationError(
                    f"per-block quota sum {total} is below the per-block capacity "
                    f"{cons.per_block_capacity}"
                )
    if cons.cluster_of is not None:
        if cons.cluster_of.shape != (emb.n,):
            raise DimensionMismatchError(
                f"cluster assignment has length {cons.cluster_of.shape}, expected {emb.n}"
            )
        if cons.cluster_of.min() < 0 or cons.cluster_of.max() >= cons.B:
            raise ValidationError(
                f"cluster ids must lie in [0, {cons.B}), got range "
                f"[{cons.cluster_of.min()}, {cons.cluster_of.max()}]"
            )
    return emb, cons


def l2_normalize_rows(
    rows: np.ndarray, ids: tuple[str, ...] | None = None
) -> np.ndarray:
    """Return a row-normalized copy; error on zero-norm rows."""
    rows = np.asarray(rows, dtype=np.float64)
    norms = np.linalg.norm(rows, axis=1)
    if np.any(norms == 0.0):
        bad = int(np.argmin(norms))
        name = ids[bad] if ids is not None else str(bad)
        raise ZeroNormRowError(f"cannot normalize zero-norm row id {name!r}")
    return rows / norms[:, None]


def build_similarity(emb: EmbeddingMatrix, normalize: bool = True) -> SimilarityMatrix:
    """Pairwise dot products of the (optionally L2-normalized) rows.

    With ``normalize=True`` the result is the cosine-similarity matrix:
    diagonal entries equal 1 within 1e-6 and the output is invariant
    under positive row scaling.
    """
    rows = l2_normalize_rows(emb.rows, emb.ids) if normalize else emb.rows
    return SimilarityMatrix(entries=rows @ rows.T)
