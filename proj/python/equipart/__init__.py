"""Equitable partitions into branchings, matching forests and b-branchings."""

from equipart._core import (
    Digraph,
    GapCriterion,
    GeneratedInstance,
    MatchingForest,
    MixedGraph,
    SizeLimitError,
    StructureKind,
    b_potential,
    boundary,
    branching_roots,
    brute_force_min_gap,
    build_indegree_targets,
    check_delta_matroid,
    decompose,
    disjoint_branchings_with_roots,
    enumerate_b_branchings,
    enumerate_matching_forests,
    equitable_b_partition,
    equitable_branching_partition,
    equitable_mf_partition,
    generate_partitionable,
    indegree_vector,
    is_b_branching,
    is_branching,
    is_matching_forest,
    mf_potential,
    partition_into_k_bbranchings,
    partition_into_k_matching_forests,
    repartition_two_bbranchings,
    repartition_two_branchings,
    source_components,
    strong_components,
    tight_core,
)

__all__ = [
    "Digraph",
    "GapCriterion",
    "GeneratedInstance",
    "MatchingForest",
    "MixedGraph",
    "SizeLimitError",
    "StructureKind",
    "b_potential",
    "boundary",
    "branching_roots",
    "brute_force_min_gap",
    "build_indegree_targets",
    "check_delta_matroid",
    "decompose",
    "disjoint_branchings_with_roots",
    "enumerate_b_branchings",
    "enumerate_matching_forests",
    "equitable_b_partition",
    "equitable_branching_partition",
    "equitable_mf_partition",
    "generate_partitionable",
    "indegree_vector",
    "is_b_branching",
    "is_branching",
    "is_matching_forest",
    "mf_potential",
    "partition_into_k_bbranchings",
    "partition_into_k_matching_forests",
    "repartition_two_bbranchings",
    "repartition_two_branchings",
    "source_components",
    "strong_components",
    "tight_core",
]
