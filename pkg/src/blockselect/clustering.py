"""K-means clustering used by the local-diverse strategy.

Lloyd's iteration with seeded kmeans++ initialization.  Assignment ties
break toward the lowest cluster id, empty clusters are repaired by
moving in the point farthest from its own centroid, and the whole
procedure is deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EmbeddingMatrix, ValidationError, _frozen


@dataclass(frozen=True)
class ClusterAssignment:
    cluster_of: np.ndarray
    centroids: np.ndarray
    inertia: float

    def __post_init__(self):
        object.__setattr__(
            self, "cluster_of", _frozen(np.array(self.cluster_of, dtype=np.int64))
        )
        object.__setattr__(
            self, "centroids", _frozen(np.array(self.centroids, dtype=np.float64))
        )


def _sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    # (n, c) matrix of squared Euclidean distances
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ncd,ncd->nc", diff, diff)


def _kmeans_pp_init(rows: np.ndarray, B: int, rng: np.random.Generator) -> np.ndarray:
    n = rows.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = np.einsum("nd,nd->n", rows - rows[chosen[0]], rows - rows[chosen[0]])
    while len(chosen) < B:
        total = d2.sum()
        if total <= 0.0:
            # all remaining points coincide with a center; take lowest unused
            nxt = next(i for i in range(n) if i not in chosen)
        else:
            nxt = int(rng.choice(n, p=d2 / total))
        chosen.append(nxt)
        d2 = np.minimum(
            d2, np.einsum("nd,nd->n", rows - rows[nxt], rows - rows[nxt])
        )
    return rows[chosen].copy()


def _repair_empty(assign: np.ndarray, dists: np.ndarray, B: int) -> np.ndarray:
    """Give every empty cluster the point farthest from its own centroid.

    Never steals from a singleton cluster; ties go to the lowest point
    index.  Returns the (possibly modified) assignment.
    """
    assign = assign.copy()
    for b in range(B):
        if np.any(assign == b):
            continue
        counts = np.bincount(assign, minlength=B)
        own = dists[np.arange(len(assign)), assign]
        movable = counts[assign] >= 2
        if not np.any(movable):
            raise ValidationError(f"cannot repair empty cluster {b}")
        candidates = np.where(movable)[0]
        far = candidates[int(np.argmax(own[candidates]))]
        assign[far] = b
    return assign


def kmeans(
    emb: EmbeddingMatrix | np.ndarray,
    B: int,
    seed: int = 0,
    max_iter: int = 100,
) -> ClusterAssignment:
    """Cluster the rows into B groups; deterministic under a fixed seed.

    Stops when no assignment changes or after ``max_iter`` iterations.
    """
    rows = emb.rows if isinstance(emb, EmbeddingMatrix) else np.asarray(emb, dtype=np.float64)
    n = rows.shape[0]
    B = int(B)
    if B < 1:
        raise ValidationError("cluster count must be at least 1")
    if B > n:
        raise ValidationError(f"cluster count {B} exceeds point count {n}")

    rng = np.random.default_rng(int(seed))
    centers = _kmeans_pp_init(rows, B, rng)
    assign = np.full(n, -1, dtype=np.int64)
    for _ in range(int(max_iter)):
        dists = _sq_dists(rows, centers)
        new_assign = dists.argmin(axis=1)
        new_assign = _repair_empty(new_assign, dists, B)
        if np.array_equal(new_assign, assign):
            break
        assign = new_assign
        for b in range(B):
            centers[b] = rows[assign == b].mean(axis=0)
    inertia = float(np.einsum("nd,nd->n", rows - centers[assign], rows - centers[assign]).sum())
    return ClusterAssignment(cluster_of=assign, centroids=centers, inertia=inertia)
