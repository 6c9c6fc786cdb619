"""Shared generators and from-definition reference computations.

Everything here is deliberately independent of the library's fast
paths: plain python loops over plain lists, so a bug in the numpy code
cannot hide in its own oracle.
"""

from __future__ import annotations

import numpy as np


def fl_def(S, selection) -> float:
    """Facility-location value by definition: clipped column maxima."""
    rows = [[float(x) for x in row] for row in np.asarray(S)]
    n = len(rows)
    total = 0.0
    for j in range(n):
        best = 0.0
        for i in selection:
            if rows[i][j] > best:
                best = rows[i][j]
        total += best
    return total


def coverage_def(S, selection) -> list[float]:
    """Clipped per-column best similarity, recomputed from scratch."""
    rows = np.asarray(S, dtype=float)
    n = rows.shape[0]
    best = [0.0] * n
    for i in selection:
        for j in range(n):
            if rows[i][j] > best[j]:
                best[j] = rows[i][j]
    return best


def normalized_rows(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    rows = rng.standard_normal((n, d))
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def random_similarity(rng: np.random.Generator, n: int, d: int = 8) -> np.ndarray:
    rows = normalized_rows(rng, n, d)
    return rows @ rows.T


def gaussian_mixture(
    rng: np.random.Generator,
    components: int = 4,
    per_component: int = 50,
    d: int = 16,
    center_scale: float = 2.0,
) -> tuple[np.ndarray, list[str]]:
    """Gaussian blobs around fixed orthogonal centers (unit noise).

    Fixed centers keep the component geometry identical across seeds, so
    statistical regression gates do not ride on random center draws.
    """
    assert components <= d
    rows = []
    labels = []
    for c in range(components):
        center = np.zeros(d)
        center[c] = center_scale
        rows.append(center + rng.standard_normal((per_component, d)))
        labels.extend([f"c{c}"] * per_component)
    return np.vstack(rows), labels
