"""Domain types, validation, and similarity construction."""

import numpy as np
import pytest

from blockselect.core import (
    BlockCountError,
    BudgetError,
    ConstraintSet,
    CoverageState,
    DimensionMismatchError,
    DuplicateIdError,
    EmbeddingMatrix,
    NonFiniteError,
    SimilarityMatrix,
    StrategyConfig,
    UnknownStrategyError,
    ValidationError,
    ZeroNormRowError,
    build_similarity,
    validate_inputs,
)

from helpers import normalized_rows


def make_emb(rows, labels=None):
    rows = np.asarray(rows, dtype=float)
    ids = tuple(f"item{i}" for i in range(rows.shape[0]))
    return EmbeddingMatrix(rows=rows, ids=ids, labels=labels)


class TestValidateInputs:
    def test_ok(self):
        emb = make_emb(np.eye(4)[:, :2])
        cons = ConstraintSet(k=4, B=2)
        assert validate_inputs(emb, cons) == (emb, cons)

    def test_budget_exceeds_ground_set(self):
        emb = make_emb(np.eye(4))
        with pytest.raises(BudgetError, match="budget exceeds ground set"):
            validate_inputs(emb, ConstraintSet(k=5, B=2))

    def test_more_blocks_than_budget(self):
        emb = make_emb(np.eye(4))
        with pytest.raises(BlockCountError, match="more blocks than budget"):
            validate_inputs(emb, ConstraintSet(k=4, B=5))

    def test_zero_blocks(self):
        emb = make_emb(np.eye(4))
        with pytest.raises(BlockCountError):
            validate_inputs(emb, ConstraintSet(k=4, B=0))

    def test_duplicate_ids(self):
        emb = EmbeddingMatrix(rows=np.eye(2), ids=("x", "x"))
        with pytest.raises(DuplicateIdError, match="'x'"):
            validate_inputs(emb, ConstraintSet(k=2, B=1))

    def test_non_finite_entry(self):
        rows = np.eye(3)
        rows[1, 1] = np.nan
        emb = make_emb(rows)
        with pytest.raises(NonFiniteError, match="item1"):
            validate_inputs(emb, ConstraintSet(k=2, B=1))

    def test_label_count_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            make_emb(np.eye(3), labels=("a", "b"))

    def test_quota_sum_below_capacity(self):
        emb = make_emb(np.eye(4), labels=("p", "p", "n", "n"))
        cons = ConstraintSet(
            k=4, B=2, per_block_capacity=3, label_quotas={"p": 1, "n": 1}
        )
        with pytest.raises(ValidationError, match="quota sum"):
            validate_inputs(emb, cons)

    def test_cluster_ids_out_of_range(self):
        emb = make_emb(np.eye(4))
        cons = ConstraintSet(k=4, B=2, cluster_of=[0, 1, 2, 0])
        with pytest.raises(ValidationError, match="cluster ids"):
            validate_inputs(emb, cons)


class TestBuildSimilarity:
    def test_orthonormal(self):
        S = build_similarity(make_emb([[1, 0], [0, 1]]), normalize=True)
        np.testing.assert_allclose(S.entries, np.eye(2))

    def test_scaling_removed_by_normalization(self):
        S = build_similarity(make_emb([[2, 0], [0, 2]]), normalize=True)
        np.testing.assert_allclose(S.entries, np.eye(2))

    def test_raw_dot_products(self):
        S = build_similarity(make_emb([[1, 0], [1, 1]]), normalize=False)
        np.testing.assert_allclose(S.entries, [[1, 1], [1, 2]])

    def test_zero_norm_row_named(self):
        emb = make_emb([[1.0, 0.0], [0.0, 0.0]])
        with pytest.raises(ZeroNormRowError, match="item1"):
            build_similarity(emb, normalize=True)

    def test_positive_scaling_invariance(self):
        rng = np.random.default_rng(7)
        rows = rng.standard_normal((12, 5))
        scales = rng.uniform(0.1, 10.0, size=12)
        a = build_similarity(make_emb(rows), normalize=True).entries
        b = build_similarity(make_emb(rows * scales[:, None]), normalize=True).entries
        assert np.max(np.abs(a - b)) <= 1e-6

    def test_normalized_diagonal_is_one(self):
        rng = np.random.default_rng(11)
        S = build_similarity(make_emb(rng.standard_normal((9, 4))), normalize=True)
        assert np.max(np.abs(np.diag(S.entries) - 1.0)) <= 1e-6

    def test_symmetry(self):
        rng = np.random.default_rng(3)
        S = build_similarity(make_emb(rng.standard_normal((8, 3))), normalize=False)
        assert np.max(np.abs(S.entries - S.entries.T)) <= 1e-6


class TestTypes:
    def test_similarity_rejects_asymmetry(self):
        with pytest.raises(ValidationError, match="symmetric"):
            SimilarityMatrix(entries=[[1.0, 0.5], [0.1, 1.0]])

    def test_similarity_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            SimilarityMatrix(entries=np.ones((2, 3)))

    def test_similarity_rejects_non_finite(self):
        with pytest.raises(NonFiniteError):
            SimilarityMatrix(entries=[[1.0, np.inf], [np.inf, 1.0]])

    def test_core_arrays_are_frozen(self):
        emb = make_emb(normalized_rows(np.random.default_rng(0), 4, 3))
        with pytest.raises(ValueError):
            emb.rows[0, 0] = 5.0
        cov = CoverageState.empty(4)
        with pytest.raises(ValueError):
            cov.best_sim[0] = 1.0

    def test_strategy_config_rejects_unknown_tag(self):
        with pytest.raises(UnknownStrategyError):
            StrategyConfig(strategy="frobnicate")

    def test_strategy_config_rejects_bad_seed(self):
        with pytest.raises(ValidationError):
            StrategyConfig(strategy="global-diverse", seed=-1)

    def test_strategy_config_rejects_other_tie_rule(self):
        with pytest.raises(ValidationError):
            StrategyConfig(strategy="global-diverse", tie_break="random")
