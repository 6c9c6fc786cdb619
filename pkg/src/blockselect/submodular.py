"""Facility-location scoring, marginal gains, and plain greedy selection.

The objective of a selection G over similarity matrix S is

    f(G) = sum_j max(0, max_{i in G} S[i, j]),        f({}) = 0.

Because coverage is clipped at zero, f is monotone and submodular for
any real S, and the clipped gain ``sum_j max(0, S[i, j] - best_sim[j])``
equals ``f(G + {i}) - f(G)`` exactly.  Greedy selection therefore
carries the classic (1 - 1/e) approximation guarantee.

Ties always resolve to the lowest candidate index, which makes every
routine byte-deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .core import CoverageState, SimilarityMatrix


def _entries(S) -> np.ndarray:
    """Accept a SimilarityMatrix or any square array-like."""
    if isinstance(S, SimilarityMatrix):
        return S.entries
    return np.asarray(S, dtype=np.float64)


def _check_indices(idx: np.ndarray, n: int) -> None:
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise IndexError(f"index out of range [0, {n})")


def eval_fl(S, G: Iterable[int]) -> float:
    """Facility-location value of the index set G (0 for the empty set)."""
    m = _entries(S)
    idx = np.fromiter((int(i) for i in G), dtype=np.int64)
    if idx.size == 0:
        return 0.0
    _check_indices(idx, m.shape[0])
    return float(np.maximum(m[idx].max(axis=0), 0.0).sum())


def coverage_of(S, selected: Iterable[int]) -> CoverageState:
    """Coverage state recomputed from scratch for an ordered selection."""
    m = _entries(S)
    sel = tuple(int(i) for i in selected)
    idx = np.asarray(sel, dtype=np.int64)
    if idx.size == 0:
        return CoverageState.empty(m.shape[0])
    _check_indices(idx, m.shape[0])
    return CoverageState(
        best_sim=np.maximum(m[idx].max(axis=0), 0.0), selected=sel
    )


def gain_vector(S, cov: CoverageState, candidates: Sequence[int]) -> np.ndarray:
    """Clipped marginal gain of every candidate against a coverage state.

    All entries are >= 0.  The result aligns with ``candidates`` order.
    """
    m = _entries(S)
    idx = np.asarray(list(candidates), dtype=np.int64)
    if idx.size == 0:
        return np.zeros(0)
    _check_indices(idx, m.shape[0])
    return np.maximum(m[idx] - cov.best_sim[None, :], 0.0).sum(axis=1)


def marginal_gain(S, cov: CoverageState, i: int) -> float:
    """Gain of adding index i; equals eval_fl(selected + {i}) - eval_fl(selected)."""
    i = int(i)
    if i in cov.selected:
        raise ValueError(f"index {i} already selected")
    m = _entries(S)
    if not 0 <= i < m.shape[0]:
        raise IndexError(f"index out of range [0, {m.shape[0]})")
    return float(np.maximum(m[i] - cov.best_sim, 0.0).sum())


def update_coverage(cov: CoverageState, S, i: int) -> CoverageState:
    """New state with index i appended and best_sim raised elementwise."""
    i = int(i)
    if i in cov.selected:
        raise ValueError(f"index {i} already selected")
    m = _entries(S)
    if not 0 <= i < m.shape[0]:
        raise IndexError(f"index out of range [0, {m.shape[0]})")
    return CoverageState(
        best_sim=np.maximum(cov.best_sim, m[i]),
        selected=cov.selected + (i,),
    )


def greedy_select(
    S,
    k: int,
    init: CoverageState | None = None,
    candidates: Iterable[int] | None = None,
) -> list[int]:
    """Pick k indices by repeated argmax of marginal gain.

    ``init`` seeds the coverage (default empty); ``candidates`` restricts
    the pool (default: all indices not already selected).  Returns the
    indices in selection order.
    """
    m = _entries(S)
    n = m.shape[0]
    cov = init if init is not None else CoverageState.empty(n)
    if candidates is None:
        pool = [i for i in range(n) if i not in cov.selected]
    else:
        pool = sorted({int(i) for i in candidates})
        _check_indices(np.asarray(pool, dtype=np.int64), n)
        overlap = set(pool) & set(cov.selected)
        if overlap:
            raise ValueError(f"candidates overlap initial selection: {sorted(overlap)}")
    if k > len(pool):
        raise ValueError(f"budget k={k} exceeds candidate pool of size {len(pool)}")

    best = cov.best_sim.copy()
    picked: list[int] = []
    remaining = np.asarray(pool, dtype=np.int64)
    for _ in range(int(k)):
        gains = np.maximum(m[remaining] - best[None, :], 0.0).sum(axis=1)
        at = int(np.argmax(gains))  # first max = lowest index (pool is sorted)
        chosen = int(remaining[at])
        picked.append(chosen)
        best = np.maximum(best, m[chosen])
        remaining = np.delete(remaining, at)
    return picked
