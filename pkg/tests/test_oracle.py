import pytest

from cvdchordal.graph import WeightedGraph, mask_of
from cvdchordal.oracle import (BruteOracle, brute_g, brute_psi, build_interaction_graph,
                               check_supermodularity_of_g, check_theorem2_construction)
from cvdchordal.selftest import small_chordal
from cvdchordal.solution import ClusterSolution, validate_solution
from conftest import FIGURE_PSI_UNIT


def test_brute_psi_small():
    p3 = WeightedGraph(3, [(0, 1), (1, 2)])
    assert brute_psi(p3)[0] == 2
    c4 = WeightedGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert brute_psi(c4)[0] == 2      # no chordality assumption here


def test_brute_psi_figure_pinned(figure_graph):
    value, sol = brute_psi(figure_graph)
    assert value == FIGURE_PSI_UNIT
    ok, why = validate_solution(figure_graph, sol)
    assert ok, why


def test_brute_psi_cap():
    g = WeightedGraph(23, [])
    with pytest.raises(ValueError):
        brute_psi(g)


def test_brute_g_conventions(figure_graph):
    k = mask_of([0, 1, 2])
    assert brute_g(figure_graph, k, 0) == FIGURE_PSI_UNIT
    k4 = WeightedGraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)],
                       [2, 3, 4, 5])
    assert brute_g(k4, k4.full_mask, k4.full_mask) == 14
    with pytest.raises(ValueError):
        brute_g(figure_graph, k, 1 << 5)


def test_brute_g_figure_inequality(figure_graph):
    k = mask_of([0, 1, 2])
    a1 = mask_of([0, 1])
    a2 = mask_of([0, 2])
    oracle = BruteOracle(figure_graph)
    g_union = oracle.g_value(k, a1 | a2)
    g_inter = oracle.g_value(k, a1 & a2)
    assert g_union + g_inter >= oracle.g_value(k, a1) + oracle.g_value(k, a2)
    # the two pinned-solution values from the running example
    assert oracle.g_value(k, a1) == 9
    assert oracle.g_value(k, a2) == 9


def test_validate_solution_diagnostics():
    g = WeightedGraph(4, [(0, 1), (1, 2)])
    sols = ClusterSolution.from_vertices(g, mask_of([0, 1, 3]))
    assert validate_solution(g, sols) == (True, None)
    adjacent = ClusterSolution(vertices=0b0111, clusters=(0b011, 0b100), weight=3)
    ok, why = validate_solution(g, adjacent)
    assert not ok and "edge between clusters" in why
    notclique = ClusterSolution(vertices=0b0101, clusters=(0b0101,), weight=2)
    ok, why = validate_solution(g, notclique)
    assert not ok and "not a clique" in why
    badweight = ClusterSolution(vertices=0b0001, clusters=(0b0001,), weight=9)
    ok, why = validate_solution(g, badweight)
    assert not ok and "weight" in why


def figure_paper_solutions(g):
    s1 = ClusterSolution.from_vertices(g, mask_of([0, 1, 6, 7, 8, 9, 10, 11, 12]))
    s2 = ClusterSolution.from_vertices(g, mask_of([0, 2, 3, 4, 5, 6, 7, 12, 13]))
    return s1, s2


def test_interaction_graph_figure(figure_graph):
    """The running example's two optimal solutions pinned to {0,1} and {0,2}
    interact in a tree of 11 clusters whose seed edge is a bridge."""
    s1, s2 = figure_paper_solutions(figure_graph)
    assert s1.weight == s2.weight == 9
    ok, why = validate_solution(figure_graph, s1)
    assert ok, why
    ok, why = validate_solution(figure_graph, s2)
    assert ok, why
    a1, a2 = mask_of([0, 1]), mask_of([0, 2])
    b = build_interaction_graph(figure_graph, s1, s2, a1, a2)
    assert len(b.clusters) == 11
    assert b.is_tree()
    assert all(b.sides[i] != b.sides[j] for i, j in b.edges)
    key = (min(b.a1_index, b.a2_index), max(b.a1_index, b.a2_index))
    assert key in b.edges
    assert b.a2_index not in b.component_of(b.a1_index, banned_edge=key)


def test_interaction_graph_requires_cluster_membership(figure_graph):
    s1, s2 = figure_paper_solutions(figure_graph)
    with pytest.raises(ValueError):
        build_interaction_graph(figure_graph, s1, s2, mask_of([0, 1, 2]), mask_of([0, 2]))


def test_theorem2_figure(figure_graph):
    report = check_theorem2_construction(figure_graph, mask_of([0, 1, 2]),
                                         mask_of([0, 1]), mask_of([0, 2]))
    assert report.ok, report.checks
    assert report.checks["weight_identity"]
    assert report.s_union.weight + report.s_inter.weight == report.s1.weight + report.s2.weight


def test_theorem2_refuses_nested_seeds(figure_graph):
    with pytest.raises(ValueError):
        check_theorem2_construction(figure_graph, mask_of([0, 1, 2]),
                                    mask_of([0]), mask_of([0, 1]))
    with pytest.raises(ValueError):
        check_theorem2_construction(figure_graph, mask_of([0, 1, 2]),
                                    mask_of([0, 1]), mask_of([0, 1]))


def test_theorem2_disjoint_seeds_single_clique():
    k4 = WeightedGraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)],
                       [1, 2, 3, 4])
    report = check_theorem2_construction(k4, k4.full_mask, 0b0011, 0b1100)
    assert report.ok, report.checks


def test_theorem2_randomized():
    from cvdchordal.selftest import theorem2_seed_check
    for seed in range(30):
        out = theorem2_seed_check(seed, 12)
        assert not out["failures"], out


def test_supermodularity_of_g_singleton():
    g = WeightedGraph(2, [(0, 1)])
    ok, witness = check_supermodularity_of_g(g, 1 << 0)
    assert ok and witness is None


def test_supermodularity_of_g_figure(figure_graph):
    ok, witness = check_supermodularity_of_g(figure_graph, mask_of([0, 1, 2]))
    assert ok, witness


def test_supermodularity_of_g_randomized():
    for seed in range(20):
        g, tree = small_chordal(seed, 12)
        k = max(tree.cliques, key=lambda m: m.bit_count())
        while k.bit_count() > 6:
            k &= k - 1
        ok, witness = check_supermodularity_of_g(g, k)
        assert ok, (seed, witness)


def test_supermodularity_of_g_caps():
    g = WeightedGraph(19, [])
    with pytest.raises(ValueError):
        check_supermodularity_of_g(g, 1)
    g = WeightedGraph(10, [(u, v) for u in range(10) for v in range(u + 1, 10)])
    with pytest.raises(ValueError):
        check_supermodularity_of_g(g, g.full_mask & 0x1FF)
