"""Brute-force ground truth and executable checks of the exchange argument
behind the supermodularity of the cluster-constrained objective.

Everything here trades speed for trustworthiness: subsets are enumerated
exhaustively (hard size caps), and the structural checker replays the
solution-exchange construction step by step on concrete instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import WeightedGraph, bits
from .solution import ClusterSolution, validate_solution

BRUTE_CAP = 22


def _best_cluster_subset(g: WeightedGraph, allowed: int) -> tuple[int, int]:
    """Max-weight subset of ``allowed`` inducing a cluster graph.

    Scans all submasks in ascending numeric order (ties keep the first, i.e.
    lowest, mask). Returns (weight, mask).
    """
    cn = g.cnbr
    wts = g.weights
    best_w = -1
    best_mask = 0
    s = 0
    while True:
        total = 0
        rest = s
        ok = True
        while rest:
            lv = rest & -rest
            v = lv.bit_length() - 1
            m = cn[v] & s
            r = (m & -m).bit_length() - 1
            if cn[r] & s != m:
                ok = False
                break
            total += wts[v]
            rest ^= lv
        if ok and total > best_w:
            best_w = total
            best_mask = s
        s = (s - allowed) & allowed
        if not s:
            break
    return best_w, best_mask


class BruteOracle:
    """Exhaustive solver for one graph, memoized over allowed-vertex masks."""

    def __init__(self, g: WeightedGraph, cap: int = BRUTE_CAP):
        if g.n > cap:
            raise ValueError(f"brute force refused: n={g.n} exceeds cap {cap}")
        self.g = g
        self._memo: dict[int, tuple[int, int]] = {}

    def best_subset(self, allowed: int | None = None) -> tuple[int, int]:
        if allowed is None:
            allowed = self.g.full_mask
        hit = self._memo.get(allowed)
        if hit is None:
            hit = self._memo[allowed] = _best_cluster_subset(self.g, allowed)
        return hit

    def psi(self, allowed: int | None = None) -> int:
        return self.best_subset(allowed)[0]

    def g_value(self, k: int, x: int) -> int:
        """Max weight of a solution in which the clique subset ``x`` of ``k``
        is a cluster (x = 0 means unconstrained)."""
        return self.g_witness(k, x)[0]

    def g_witness(self, k: int, x: int) -> tuple[int, int]:
        g = self.g
        if x & ~k:
            raise ValueError("x is not a subset of the clique")
        if not g.is_clique(k):
            raise ValueError("k is not a clique")
        if not x:
            return self.best_subset()
        closed = g.closed_neighborhood(x)
        w, rest = self.best_subset(g.full_mask & ~closed)
        return g.weight_of(x) + w, x | rest


def brute_psi(g: WeightedGraph, cap: int = BRUTE_CAP) -> tuple[int, ClusterSolution]:
    value, mask = BruteOracle(g, cap).best_subset()
    return value, ClusterSolution.from_vertices(g, mask)


def brute_g(h: WeightedGraph, k: int, x: int, cap: int = BRUTE_CAP) -> int:
    return BruteOracle(h, cap).g_value(k, x)


@dataclass
class InteractionGraph:
    """Clusters of two solutions, with an edge wherever the host graph has
    an edge between (or a shared vertex in) two clusters."""

    clusters: list[int]
    sides: list[int]                  # 0 = first solution, 1 = second
    edges: set[tuple[int, int]]       # i < j
    a1_index: int
    a2_index: int

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out

    def component_of(self, i: int, banned_edge: tuple[int, int] | None = None) -> set[int]:
        seen = {i}
        stack = [i]
        while stack:
            u = stack.pop()
            for a, b in self.edges:
                if banned_edge and (a, b) == banned_edge:
                    continue
                for x, y in ((a, b), (b, a)):
                    if x == u and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return seen

    def is_connected(self) -> bool:
        return not self.clusters or len(self.component_of(0)) == len(self.clusters)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.clusters) - 1


def build_interaction_graph(h: WeightedGraph, s1: ClusterSolution, s2: ClusterSolution,
                            a1: int, a2: int) -> InteractionGraph:
    """Assumes the caller already restricted everything to s1 | s2."""
    clusters = list(s1.clusters) + list(s2.clusters)
    sides = [0] * len(s1.clusters) + [1] * len(s2.clusters)
    try:
        a1_index = list(s1.clusters).index(a1)
        a2_index = len(s1.clusters) + list(s2.clusters).index(a2)
    except ValueError:
        raise ValueError("a1/a2 must be clusters of their solutions") from None
    reach = [h.closed_neighborhood(c) for c in clusters]
    edges = set()
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            if reach[i] & clusters[j]:
                edges.add((i, j))
    return InteractionGraph(clusters, sides, edges, a1_index, a2_index)


@dataclass
class ExchangeReport:
    """Transcript of one run of the solution-exchange construction."""

    ok: bool
    checks: dict[str, bool]
    is_tree: bool
    s1: ClusterSolution | None = None
    s2: ClusterSolution | None = None
    s_union: ClusterSolution | None = None
    s_inter: ClusterSolution | None = None
    b: InteractionGraph | None = None
    component: int = 0
    failed: str | None = field(default=None)


def check_theorem2_construction(h: WeightedGraph, k: int, a1: int, a2: int,
                                cap: int = BRUTE_CAP) -> ExchangeReport:
    """Replay the exchange construction for incomparable cluster seeds.

    Computes optimal solutions pinned to a1 and a2, restricts to their union
    and the component around the seed clique, builds the cluster interaction
    graph, and checks: bipartite, connected, the a1-a2 edge exists and is a
    bridge, both recombined solutions are valid with the union/intersection
    clusters present, and the exact weight identity holds.
    """
    if a1 & ~k or a2 & ~k:
        raise ValueError("a1 and a2 must be subsets of k")
    if not h.is_clique(k):
        raise ValueError("k is not a clique")
    if a1 & ~a2 == 0 or a2 & ~a1 == 0:
        raise ValueError("a1 and a2 must be incomparable")

    oracle = BruteOracle(h, cap)
    _, s1_mask = oracle.g_witness(k, a1)
    _, s2_mask = oracle.g_witness(k, a2)

    union = s1_mask | s2_mask
    comp = next(c for c in h.components(union) if c & (a1 | a2) == (a1 | a2))
    s1 = ClusterSolution.from_vertices(h, s1_mask & comp)
    s2 = ClusterSolution.from_vertices(h, s2_mask & comp)

    checks: dict[str, bool] = {}

    def record(name: str, cond: bool) -> bool:
        checks[name] = bool(cond)
        return bool(cond)

    record("no_shared_cluster", not set(s1.clusters) & set(s2.clusters))
    b = build_interaction_graph(h, s1, s2, a1, a2)
    record("bipartite", all(b.sides[i] != b.sides[j] for i, j in b.edges))
    record("connected", b.is_connected())
    key_edge = (min(b.a1_index, b.a2_index), max(b.a1_index, b.a2_index))
    record("a1a2_edge", key_edge in b.edges)
    side1_comp = b.component_of(b.a1_index, banned_edge=key_edge)
    record("a1a2_bridge", b.a2_index not in side1_comp)
    side2_comp = set(range(len(b.clusters))) - side1_comp

    def gather(node_ids, side):
        return [b.clusters[i] for i in sorted(node_ids)
                if b.sides[i] == side and i not in (b.a1_index, b.a2_index)]

    cl_union = [a1 | a2] + gather(side1_comp, 0) + gather(side2_comp, 1)
    cl_inter = gather(side1_comp, 1) + gather(side2_comp, 0)
    if a1 & a2:
        cl_inter = [a1 & a2] + cl_inter

    def assemble(cl):
        vs = 0
        for c in cl:
            vs |= c
        return ClusterSolution(vertices=vs, clusters=tuple(cl), weight=h.weight_of(vs))

    s_union = assemble(cl_union)
    s_inter = assemble(cl_inter)
    record("s_union_valid", validate_solution(h, s_union)[0])
    record("s_inter_valid", validate_solution(h, s_inter)[0])
    record("union_cluster_present", (a1 | a2) in s_union.clusters)
    record("inter_cluster_present", not a1 & a2 or (a1 & a2) in s_inter.clusters)
    record("weight_identity", s_union.weight + s_inter.weight == s1.weight + s2.weight)

    failed = next((name for name, ok in checks.items() if not ok), None)
    return ExchangeReport(ok=failed is None, checks=checks, is_tree=b.is_tree(),
                          s1=s1, s2=s2, s_union=s_union, s_inter=s_inter,
                          b=b, component=comp, failed=failed)


def check_supermodularity_of_g(h: WeightedGraph, k: int, n_cap: int = 18,
                               k_cap: int = 8) -> tuple[bool, tuple[int, int] | None]:
    """Exhaustively test g(a|b) + g(a&b) >= g(a) + g(b) over all pairs of
    subsets of the clique ``k``. Returns (True, None) or the first violating
    pair of masks."""
    if h.n > n_cap:
        raise ValueError(f"refused: n={h.n} exceeds cap {n_cap}")
    if k.bit_count() > k_cap:
        raise ValueError(f"refused: |k|={k.bit_count()} exceeds cap {k_cap}")
    oracle = BruteOracle(h)
    vals: dict[int, int] = {}
    a = 0
    while True:
        vals[a] = oracle.g_value(k, a)
        a = (a - k) & k
        if not a:
            break
    subsets = sorted(vals)
    for a1 in subsets:
        for a2 in subsets:
            if vals[a1 | a2] + vals[a1 & a2] < vals[a1] + vals[a2]:
                return False, (a1, a2)
    return True, None
