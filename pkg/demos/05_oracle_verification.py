"""Checking the greedy machinery against exhaustive search.

On instances small enough to enumerate, the brute-force oracles bound
how far each strategy sits from the true optimum of its objective.
Greedy subset selection carries a (1 - 1/e) ~ 0.632 guarantee; the
partitioners have no formal bound, so the oracle reports their ratios.
"""

import numpy as np

from blockselect import (
    ConstraintSet,
    brute_best_partition,
    brute_best_subset,
    eval_fl,
    greedy_select,
    partition_global_diverse,
)

rng = np.random.default_rng(13)
rows = rng.standard_normal((9, 4))
rows /= np.linalg.norm(rows, axis=1, keepdims=True)
S = rows @ rows.T

for k in (2, 3, 4):
    subset, optimum = brute_best_subset(S, k)
    achieved = eval_fl(S, greedy_select(S, k))
    print(
        f"k={k}: greedy {achieved:.4f} / optimum {optimum:.4f} "
        f"= {achieved / optimum:.4f} (guarantee 0.632)"
    )

print()
cons = ConstraintSet(k=4, B=2)
best, opt_value = brute_best_partition(S, cons, "min-block")
gd = partition_global_diverse(S, cons)
gd_value = min(eval_fl(S, b) for b in gd.blocks)
print(f"max-min optimum {opt_value:.4f} at blocks {best.blocks}")
print(f"global-diverse min-block {gd_value:.4f} (ratio {gd_value / opt_value:.3f})")
