"""Smoke tests for the python bindings."""

import pytest

import equipart as eq


def test_components():
    d = eq.Digraph(3, [(0, 1), (1, 0), (0, 2)])
    assert eq.strong_components(d) == [[0, 1], [2]]
    assert eq.source_components(d) == [[0, 1]]
    assert eq.indegree_vector(d, [0, 1, 2]) == [1, 1, 1]


def test_branchings():
    d = eq.Digraph(4, [(0, 1), (1, 2), (2, 3)])
    assert eq.is_branching(d, [0, 1])
    assert eq.branching_roots(d, [0, 1]) == [0, 3]
    with pytest.raises(ValueError):
        eq.is_branching(d, [0, 0])  # duplicate arc index

    parts = eq.equitable_branching_partition(d, [[0, 1, 2], []])
    sizes = sorted(len(p) for p in parts)
    assert sizes == [1, 2]


def test_repartition_two_branchings():
    d = eq.Digraph(2, [(0, 1), (1, 0)])
    out = eq.repartition_two_branchings(d, [0], [1], [1], [0])
    assert out == ([1], [0])
    e = eq.Digraph(3, [(1, 2), (2, 1)])
    assert eq.repartition_two_branchings(e, [0], [1], [0, 1, 2], [0]) is None


def test_matching_forests():
    g = eq.MixedGraph(4, [(0, 1)], [(2, 3)])
    f = eq.MatchingForest(edges=[0], arcs=[0])
    assert eq.is_matching_forest(g, f)
    assert eq.boundary(g, f) == [0, 1, 3]

    parts = eq.equitable_mf_partition(g, [f, eq.MatchingForest()])
    sizes = sorted(len(eq.boundary(g, p)) for p in parts)
    assert sizes == [1, 2]


def test_b_branchings():
    d = eq.Digraph(2, [(0, 1), (1, 0)])
    assert eq.tight_core(d, [1, 1], [0, 1]) == [0, 1]
    assert not eq.is_b_branching(d, [1, 1], [0, 1])
    assert eq.is_b_branching(d, [2, 2], [0, 1])

    three = eq.Digraph(2, [(0, 1), (0, 1), (0, 1)])
    parts = eq.equitable_b_partition(three, [1, 3], 2, [[0, 1, 2], []])
    assert sorted(len(p) for p in parts) == [1, 2]


def test_decompose():
    d = eq.Digraph(3, [(0, 1), (1, 2)])
    parts = eq.decompose(d, [1, 1, 1], [2, 2], kappa=2, ell=2)
    assert parts == [[1, 1], [1, 1]]

    cycle = eq.Digraph(2, [(0, 1), (1, 0)])
    assert eq.decompose(cycle, [1, 1], [2, 2], kappa=2) is None


def test_preconditions_raise():
    d = eq.Digraph(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        eq.decompose(d, [1, 1, 1], [2, 1], kappa=2, ell=1)
    with pytest.raises(ValueError):
        eq.Digraph(2, [(0, 0)])


def test_oracles():
    g = eq.MixedGraph(2, [(0, 1)], [(0, 1)])
    assert len(eq.enumerate_matching_forests(g)) == 3
    assert eq.check_delta_matroid(g)

    gen = eq.generate_partitionable(seed=42, n=5, k=2,
                                    kind=eq.StructureKind.branching)
    again = eq.generate_partitionable(seed=42, n=5, k=2,
                                      kind=eq.StructureKind.branching)
    assert gen.graph.arcs == again.graph.arcs
    d = gen.graph.arc_digraph()
    for part in gen.partition:
        assert eq.is_branching(d, part.arcs)

    path = eq.MixedGraph(4, [(0, 1), (2, 3), (1, 2)], [])
    assert eq.brute_force_min_gap(path, [1, 1, 1, 1], 2,
                                  eq.GapCriterion.boundary) == 2
