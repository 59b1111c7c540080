"""Hypothesis strategies for small weighted graphs."""

from __future__ import annotations

from hypothesis import strategies as st

from cvdchordal.graph import WeightedGraph


@st.composite
def graphs(draw, max_n: int = 10, max_weight: int = 10, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(all_pairs), unique=True) if all_pairs
                 else st.just([]))
    weights = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n))
    return WeightedGraph(n, edges, weights)


@st.composite
def graphs_with_subset(draw, max_n: int = 10):
    g = draw(graphs(max_n=max_n, min_n=1))
    mask = draw(st.integers(0, g.full_mask))
    return g, mask
