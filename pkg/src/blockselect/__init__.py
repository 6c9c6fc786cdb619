"""Budgeted partitioning of embedding sets into context blocks.

Select k exemplars from a pool of embedding vectors and split them into
B disjoint blocks whose character ranges from globally diverse (each
block summarizes the whole pool) to locally coherent (each block sticks
to one semantic region), driven by greedy facility-location selection.
"""

from .balance import InfeasibleQuotaError, QuotaState, admissible, default_quotas
from .clustering import ClusterAssignment, kmeans
from .core import (
    STRATEGIES,
    ConstraintSet,
    CoverageState,
    EmbeddingMatrix,
    Partition,
    SimilarityMatrix,
    StrategyConfig,
    ValidationError,
    build_similarity,
    validate_inputs,
)
from .metrics import Comparison, PartitionReport, compare, report
from .oracle import brute_best_partition, brute_best_subset
from .partition import (
    block_capacity,
    partition_global_diverse,
    partition_global_local_diverse,
    partition_local_coherent,
    partition_local_diverse,
    random_partition,
    run_strategy,
)
from .submodular import (
    coverage_of,
    eval_fl,
    gain_vector,
    greedy_select,
    marginal_gain,
    update_coverage,
)

__version__ = "0.1.0"

__all__ = [
    "STRATEGIES",
    "ClusterAssignment",
    "Comparison",
    "ConstraintSet",
    "CoverageState",
    "EmbeddingMatrix",
    "InfeasibleQuotaError",
    "Partition",
    "PartitionReport",
    "QuotaState",
    "SimilarityMatrix",
    "StrategyConfig",
    "ValidationError",
    "admissible",
    "block_capacity",
    "brute_best_partition",
    "brute_best_subset",
    "build_similarity",
    "compare",
    "coverage_of",
    "default_quotas",
    "eval_fl",
    "gain_vector",
    "greedy_select",
    "kmeans",
    "marginal_gain",
    "partition_global_diverse",
    "partition_global_local_diverse",
    "partition_local_coherent",
    "partition_local_diverse",
    "random_partition",
    "report",
    "run_strategy",
    "update_coverage",
    "validate_inputs",
]
