"""Induced-cluster-subgraph solutions and their validator."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import WeightedGraph


@dataclass(frozen=True)
class ClusterSolution:
    """A vertex set whose induced subgraph is a cluster graph.

    ``clusters`` are the components, each a clique with no neighbors inside
    ``vertices`` outside itself; ``weight`` is the exact total weight.
    """

    vertices: int
    clusters: tuple[int, ...]
    weight: int

    @classmethod
    def from_vertices(cls, g: WeightedGraph, vertices: int) -> "ClusterSolution":
        comps = g.components(vertices)
        return cls(vertices=vertices, clusters=tuple(comps), weight=g.weight_of(vertices))


def validate_solution(g: WeightedGraph, s: ClusterSolution) -> tuple[bool, str | None]:
    """Check every solution invariant; on failure name the first violated one."""
    if s.vertices & ~g.full_mask:
        return False, "vertices outside the graph"
    acc = 0
    for c in s.clusters:
        if not c:
            return False, "empty cluster"
        if c & acc:
            return False, "clusters overlap"
        acc |= c
    if acc != s.vertices:
        return False, "clusters do not partition the vertex set"
    for c in s.clusters:
        if not g.is_clique(c):
            return False, "cluster is not a clique"
        if g.closed_neighborhood(c) & s.vertices & ~c:
            return False, "edge between clusters"
    if g.weight_of(s.vertices) != s.weight:
        return False, "weight mismatch"
    return True, None
