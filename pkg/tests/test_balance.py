"""Label quotas as hard candidate filters inside the selection loops."""

import numpy as np
import pytest

from blockselect.balance import (
    InfeasibleQuotaError,
    QuotaState,
    UnknownLabelError,
    admissible,
    default_quotas,
    quota_map,
)
from blockselect.core import ConstraintSet, EmbeddingMatrix, StrategyConfig
from blockselect.partition import run_strategy

from helpers import gaussian_mixture


def balanced_pool():
    """12 points in two separated blobs, 3 pos / 3 neg in each blob."""
    rng = np.random.default_rng(40)
    rows, _ = gaussian_mixture(rng, components=2, per_component=6, d=4,
                               center_scale=6.0)
    labels = ("pos", "pos", "pos", "neg", "neg", "neg") * 2
    ids = tuple(f"p{i}" for i in range(12))
    return EmbeddingMatrix(rows=rows, ids=ids, labels=labels)


class TestAdmissible:
    def test_quota_exhaustion(self):
        qs = QuotaState.uniform({"pos": 2, "neg": 2}, capacity=4, B=1)
        qs.consume(0, "pos")
        qs.consume(0, "pos")
        assert admissible(qs, 0, "pos") is False
        assert admissible(qs, 0, "neg") is True

    def test_capacity_exhaustion(self):
        qs = QuotaState.uniform({"pos": 2, "neg": 2}, capacity=2, B=1)
        qs.consume(0, "pos")
        qs.consume(0, "neg")
        assert admissible(qs, 0, "pos") is False

    def test_no_quotas_configured_always_true(self):
        assert admissible(None, 0, "anything") is True

    def test_unknown_label_strict(self):
        qs = QuotaState.uniform({"pos": 1}, capacity=1, B=1)
        with pytest.raises(UnknownLabelError, match="'mystery'"):
            admissible(qs, 0, "mystery")

    def test_unknown_label_lenient(self):
        qs = QuotaState.uniform({"pos": 1}, capacity=1, B=1, strict=False)
        assert admissible(qs, 0, "mystery") is False

    def test_counts_never_negative(self):
        qs = QuotaState.uniform({"pos": 1}, capacity=1, B=1)
        qs.consume(0, "pos")
        with pytest.raises(InfeasibleQuotaError):
            qs.consume(0, "pos")


class TestDefaultQuotas:
    def test_even_split(self):
        cons = ConstraintSet(k=8, B=2, per_block_capacity=4)
        qs = default_quotas(("a", "b") * 4, cons)
        assert qs.remaining == [{"a": 2, "b": 2}, {"a": 2, "b": 2}]

    def test_ceiling_rule(self):
        cons = ConstraintSet(k=8, B=2, per_block_capacity=4)
        qs = default_quotas(("a", "b", "c", "a", "b", "c", "a", "a"), cons)
        assert qs.remaining[0] == {"a": 2, "b": 2, "c": 2}
        assert qs.capacity == [4, 4]

    def test_single_label_gets_capacity(self):
        cons = ConstraintSet(k=4, B=2, per_block_capacity=2)
        qs = default_quotas(("only",) * 4, cons)
        assert qs.remaining == [{"only": 2}, {"only": 2}]


def _balanced_constraints(strategy: str, emb: EmbeddingMatrix) -> ConstraintSet:
    from blockselect.partition import block_capacity

    cap = block_capacity(strategy, 8, 2)
    return ConstraintSet(
        k=8, B=2, per_block_capacity=cap,
        label_quotas=quota_map(emb.labels, cap),
    )


class TestBalancedPartitions:
    @pytest.mark.parametrize("tag", [
        "global-diverse", "global-local-diverse", "local-diverse", "local-coherent",
    ])
    def test_feasible_pool_gives_exact_quota(self, tag):
        emb = balanced_pool()
        cons = _balanced_constraints(tag, emb)
        p = run_strategy(emb, cons, StrategyConfig(strategy=tag, seed=0))
        for block in p.blocks:
            counts = {"pos": 0, "neg": 0}
            for i in block:
                counts[emb.labels[i]] += 1
            assert counts == {"pos": 2, "neg": 2}

    def test_infeasible_pool_raises_named_error(self):
        rng = np.random.default_rng(41)
        rows, _ = gaussian_mixture(rng, components=2, per_component=6, d=4,
                                   center_scale=6.0)
        labels = tuple(["pos"] * 10 + ["neg"] * 2)
        emb = EmbeddingMatrix(rows=rows, ids=tuple(f"p{i}" for i in range(12)),
                              labels=labels)
        cons = ConstraintSet(k=8, B=2, per_block_capacity=4,
                             label_quotas={"pos": 2, "neg": 2})
        with pytest.raises(InfeasibleQuotaError, match="neg"):
            run_strategy(emb, cons, StrategyConfig(strategy="global-diverse", seed=0))

    def test_quotas_without_labels_rejected(self):
        emb = EmbeddingMatrix(rows=np.eye(4), ids=("a", "b", "c", "d"))
        cons = ConstraintSet(k=4, B=2, per_block_capacity=2,
                             label_quotas={"x": 2})
        with pytest.raises(Exception, match="labels"):
            run_strategy(emb, cons, StrategyConfig(strategy="global-diverse"))

    def test_unlimited_quotas_reproduce_unconstrained(self):
        emb = balanced_pool()
        plain_cons = ConstraintSet(k=8, B=2)
        loose_cons = ConstraintSet(
            k=8, B=2, per_block_capacity=8,
            label_quotas={"pos": 8, "neg": 8},
        )
        for tag in ("global-diverse", "global-local-diverse", "local-coherent"):
            cfg = StrategyConfig(strategy=tag, seed=0)
            assert run_strategy(emb, plain_cons, cfg).blocks == \
                run_strategy(emb, loose_cons, cfg).blocks

    def test_disabled_quotas_deterministic(self):
        emb = balanced_pool()
        cons = ConstraintSet(k=8, B=2)
        cfg = StrategyConfig(strategy="global-diverse", seed=0)
        assert run_strategy(emb, cons, cfg) == run_strategy(emb, cons, cfg)
