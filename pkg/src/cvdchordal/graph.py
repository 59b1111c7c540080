"""Weighted undirected simple graphs over dense 0-based vertex ids.

Vertex sets are plain Python ints used as bitsets (bit i = vertex i), which
keeps the hot set operations (union, intersection, difference) at C speed
and makes exact integer weight arithmetic the default.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class WeightedGraph:
    """Undirected simple graph with a nonnegative integer weight per vertex.

    Immutable after construction; instances can be shared freely.
    """

    __slots__ = ("n", "adj", "cnbr", "weights", "full_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), weights: list[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if weights is None:
            weights = [1] * n
        if len(weights) != n:
            raise ValueError(f"expected {n} weights, got {len(weights)}")
        for v, w in enumerate(weights):
            if not isinstance(w, int) or isinstance(w, bool):
                raise ValueError(f"weight of vertex {v} is not an integer: {w!r}")
            if w < 0:
                raise ValueError(f"negative weight at vertex {v}: {w}")
        self.n = n
        self.weights = list(weights)
        self.full_mask = (1 << n) - 1
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u},{v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = adj
        self.cnbr = [adj[v] | (1 << v) for v in range(n)]

    @classmethod
    def from_adj_masks(cls, adj: list[int], weights: list[int]) -> "WeightedGraph":
        """Build from per-vertex neighbor bitmasks (validated)."""
        g = cls(len(adj), (), weights)
        n = g.n
        for v, m in enumerate(adj):
            if m >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if m >= 1 << n:
                raise ValueError(f"adjacency of vertex {v} out of range")
        for v in range(n):
            for u in bits(adj[v]):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        g.adj = list(adj)
        g.cnbr = [adj[v] | (1 << v) for v in range(n)]
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.weights == other.weights

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.edge_count()})"

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def total_weight(self) -> int:
        return sum(self.weights)

    def _check_subset(self, x: int) -> None:
        if x & ~self.full_mask:
            raise ValueError("vertex set not within the graph")

    def closed_neighborhood(self, x: int) -> int:
        """Union of closed neighborhoods over the vertices of ``x``."""
        self._check_subset(x)
        out = x
        cn = self.cnbr
        for v in bits(x):
            out |= cn[v]
        return out

    def weight_of(self, x: int) -> int:
        self._check_subset(x)
        w = self.weights
        return sum(w[v] for v in bits(x))

    def induced_subgraph(self, x: int) -> tuple["WeightedGraph", list[int]]:
        """Subgraph on ``x`` with vertices relabeled to 0..|x|-1.

        Returns the subgraph and the relabeling map: entry i is the original
        id of the new vertex i.
        """
        self._check_subset(x)
        old_ids = list(bits(x))
        pos = {v: i for i, v in enumerate(old_ids)}
        adj = []
        for v in old_ids:
            m = 0
            for u in bits(self.adj[v] & x):
                m |= 1 << pos[u]
            adj.append(m)
        weights = [self.weights[v] for v in old_ids]
        return WeightedGraph.from_adj_masks(adj, weights), old_ids

    def components(self, x: int) -> list[int]:
        """Connected components of the subgraph induced by ``x``, as masks."""
        self._check_subset(x)
        out = []
        rest = x
        adj = self.adj
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= adj[v]
                nxt &= rest & ~comp
                comp |= nxt
                frontier = nxt
            out.append(comp)
            rest &= ~comp
        return out

    def is_clique(self, x: int) -> bool:
        self._check_subset(x)
        cn = self.cnbr
        for v in bits(x):
            if x & ~cn[v]:
                return False
        return True

    def is_cluster_graph(self, s: int) -> bool:
        """True iff every component of the subgraph induced by ``s`` is a clique."""
        self._check_subset(s)
        cn = self.cnbr
        for v in bits(s):
            m = cn[v] & s
            r = (m & -m).bit_length() - 1
            if cn[r] & s != m:
                return False
        return True
