import pytest

from cvdchordal.chordal import maximal_cliques, recognize_chordal, try_clique_path
from cvdchordal.chordal_dp import ChordalDp
from cvdchordal.chordal import build_clique_tree
from cvdchordal.generators import GenConfig, gen_interval
from cvdchordal.graph import WeightedGraph
from cvdchordal.interval_dp import (InvalidCliquePathError, rightmost_cluster_weight,
                                    solve_interval)
from cvdchordal.oracle import BruteOracle
from cvdchordal.solution import validate_solution


def clique_path_of(g):
    path = try_clique_path(g, maximal_cliques(g, recognize_chordal(g)))
    assert path is not None
    return path


def test_p3_unit():
    g = WeightedGraph(3, [(0, 1), (1, 2)])
    value, sol, table = solve_interval(g, clique_path_of(g))
    assert value == 2
    assert table.psi[0] == 0


def test_complete_graph_keeps_everything():
    g = WeightedGraph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)],
                      [2, 0, 7, 1, 3])
    value, sol, _ = solve_interval(g, clique_path_of(g))
    assert value == 13 and sol.vertices == g.full_mask


def test_p5_unit_matches_brute():
    g = WeightedGraph(5, [(i, i + 1) for i in range(4)])
    value, sol, _ = solve_interval(g, clique_path_of(g))
    assert value == BruteOracle(g).psi() == 4


def test_rightmost_cluster_weight_cases():
    g = WeightedGraph(3, [(0, 1), (1, 2)])
    path = clique_path_of(g)
    # both cliques inside K_i | K_{p+1} leaves an empty clique
    assert rightmost_cluster_weight(g, path, 1, 2) == 1
    assert rightmost_cluster_weight(g, path, 0, 2) == max(
        g.weight_of(path[0]), g.weight_of(path[1]))
    sub = WeightedGraph(2, [(0, 1)])
    spath = clique_path_of(sub)
    assert rightmost_cluster_weight(sub, spath, 0, 1) == 2
    with pytest.raises(ValueError):
        rightmost_cluster_weight(g, path, 2, 2)


def test_nested_cliques_pendant():
    # K4 with a pendant hanging off vertex 3: keeping the K4 beats trading
    # vertex 3 for the pendant
    g = WeightedGraph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)],
                      [5, 5, 5, 5, 1])
    value, _, _ = solve_interval(g, clique_path_of(g))
    assert value == BruteOracle(g).psi() == 20


def test_invalid_path_rejected():
    g = WeightedGraph(3, [(0, 1), (1, 2)])
    with pytest.raises(InvalidCliquePathError):
        solve_interval(g, [0b011])                     # missing a clique
    p4 = WeightedGraph(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(InvalidCliquePathError):
        solve_interval(p4, [0b0011, 0b1100, 0b0110])   # vertex 1 not consecutive


def test_choices_reproduce_table():
    for seed in range(20):
        g = gen_interval(GenConfig(n=12, seed=seed, subtree_span=3))
        path = clique_path_of(g)
        value, sol, table = solve_interval(g, path)
        for p in range(1, len(path) + 1):
            i, j = table.choice[p]
            excluded = (path[i - 1] if i else 0) | (path[p] if p < len(path) else 0)
            got = table.psi[i] + g.weight_of(path[j - 1] & ~excluded)
            assert got == table.psi[p]
            assert g.weight_of(path[j - 1] & ~excluded) == rightmost_cluster_weight(g, path, i, p)
        ok, why = validate_solution(g, sol)
        assert ok, why
        assert sol.weight == value


def test_matches_chordal_dp_and_brute():
    for seed in range(40):
        g = gen_interval(GenConfig(n=13, seed=seed, subtree_span=4))
        path = clique_path_of(g)
        iv, _, _ = solve_interval(g, path)
        cl = maximal_cliques(g, recognize_chordal(g))
        cv, _, _ = ChordalDp(g, build_clique_tree(g, cl)).solve()
        assert iv == cv == BruteOracle(g).psi()


def test_operation_count_quadratic_trend():
    # operation counter over doubling sizes at fixed interval length
    ops = {}
    for n in (64, 128, 256):
        runs = []
        for seed in range(5):
            g = gen_interval(GenConfig(n=n, seed=seed, subtree_span=3))
            path = try_clique_path(g, maximal_cliques(g, recognize_chordal(g)))
            assert path is not None
            _, _, table = solve_interval(g, path)
            runs.append(table.ops)
        runs.sort()
        ops[n] = runs[len(runs) // 2]
    assert ops[128] / ops[64] <= 4.5
    assert ops[256] / ops[128] <= 4.5
