from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cvdchordal.graph import WeightedGraph, bits, mask_of

from strategies import graphs, graphs_with_subset


def test_closed_neighborhood_path():
    g = WeightedGraph(3, [(0, 1), (1, 2)])
    assert g.closed_neighborhood(0b010) == 0b111
    assert g.closed_neighborhood(0) == 0


def test_closed_neighborhood_figure(figure_graph):
    assert figure_graph.closed_neighborhood(1 << 0) == mask_of([0, 1, 2])


def test_weight_of():
    g = WeightedGraph(5, [], [1, 1, 1, 1, 1])
    assert g.weight_of(0b11111) == 5
    assert g.weight_of(0) == 0
    g = WeightedGraph(2, [], [3, 7])
    assert g.weight_of(0b11) == 10


def test_induced_subgraph_full_and_empty():
    g = WeightedGraph(4, [(0, 1), (2, 3)], [1, 2, 3, 4])
    h, ids = g.induced_subgraph(g.full_mask)
    assert h == g and ids == [0, 1, 2, 3]
    h, ids = g.induced_subgraph(0)
    assert h.n == 0 and ids == []


def test_induced_subgraph_figure(figure_graph):
    sub, ids = figure_graph.induced_subgraph(mask_of([10, 11, 12, 13]))
    assert ids == [10, 11, 12, 13]
    got = {(ids[u], ids[v]) for u, v in sub.edges()}
    assert got == {(10, 11), (10, 12), (11, 12), (11, 13), (12, 13)}


def test_components():
    g = WeightedGraph(4, [(0, 1), (1, 2)])
    assert g.components(0b0111) == [0b0111]
    assert g.components(0) == []
    assert g.components(0b1001) == [0b0001, 0b1000]


def test_is_clique(figure_graph):
    g = WeightedGraph(3, [(0, 1)])
    assert g.is_clique(1 << 2)
    assert not g.is_clique(0b110)
    assert figure_graph.is_clique(mask_of([0, 1, 2]))


def test_is_cluster_graph():
    g = WeightedGraph(3, [(0, 1), (1, 2)])
    assert g.is_cluster_graph(0)
    assert not g.is_cluster_graph(0b111)          # an induced path on three vertices
    two_triangles = WeightedGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert two_triangles.is_cluster_graph(two_triangles.full_mask)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        WeightedGraph(1, [], [-1])
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 2)])


def _has_induced_p3(g: WeightedGraph, s: int) -> bool:
    verts = list(bits(s))
    for a, b, c in combinations(verts, 3):
        for mid in (a, b, c):
            u, v = [x for x in (a, b, c) if x != mid]
            if (g.adj[mid] >> u & 1 and g.adj[mid] >> v & 1
                    and not g.adj[u] >> v & 1):
                return True
    return False


@given(graphs_with_subset(max_n=9))
def test_cluster_graph_iff_p3_free(gs):
    g, s = gs
    assert g.is_cluster_graph(s) == (not _has_induced_p3(g, s))


@given(graphs_with_subset())
def test_closed_neighborhood_contains_and_fixpoint(gs):
    g, x = gs
    nb = g.closed_neighborhood(x)
    assert nb & x == x
    has_outside = any(g.adj[v] & ~x for v in bits(x))
    assert (nb == x) == (not has_outside)


@given(graphs_with_subset())
def test_components_partition(gs):
    g, x = gs
    comps = g.components(x)
    acc = 0
    for c in comps:
        assert c and not c & acc
        acc |= c
    assert acc == x


@given(graphs_with_subset(), st.integers(0, 1023))
def test_weight_additive_over_disjoint(gs, other):
    g, x = gs
    y = other & g.full_mask & ~x
    assert g.weight_of(x | y) == g.weight_of(x) + g.weight_of(y)
