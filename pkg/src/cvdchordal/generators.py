"""Reproducible random instances: chordal graphs with known clique trees,
interval graphs, plus clique/path families for edge cases.

All randomness flows through splitmix64 so that fixed seeds give
byte-identical instances on any platform or Python version.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import WeightedGraph, bits
from .chordal import CliqueTree, build_clique_tree, maximal_cliques, recognize_chordal

PRNG_ID = "splitmix64"
_WEIGHT_STREAM_TAG = 0xA5A5_5A5A_0F0F_F0F0

FAMILIES = ("chordal", "interval", "clique", "path")


class SplitMix64:
    """splitmix64 (Steele et al.); stable across platforms."""

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], unbiased via rejection."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            r = self.next64()
            if r < limit:
                return lo + r % span


@dataclass
class GenConfig:
    n: int
    seed: int = 0
    tree_nodes: int = 0                      # 0: pick n // 3 (at least 1)
    subtree_span: int = 1
    weight_range: tuple[int, int] = (0, 10)
    family: str = "chordal"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.tree_nodes == 0:
            self.tree_nodes = max(1, self.n // 3)
        if self.tree_nodes < 1:
            raise ValueError("tree_nodes must be at least 1")
        if self.subtree_span < 0:
            raise ValueError("subtree_span must be nonnegative")
        lo, hi = self.weight_range
        if lo < 0 or hi < lo:
            raise ValueError("weight_range must be a nonnegative interval")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def gen_weights(cfg: GenConfig, g: WeightedGraph) -> WeightedGraph:
    """Independent uniform weights per vertex, drawn from a stream derived
    from the config seed (separate from the structure stream)."""
    rng = SplitMix64(cfg.seed ^ _WEIGHT_STREAM_TAG)
    lo, hi = cfg.weight_range
    weights = [rng.randint(lo, hi) for _ in range(g.n)]
    return WeightedGraph.from_adj_masks(g.adj, weights)


_TREE_DEGREE_CAP = 4


def _random_tree(rng: SplitMix64, m: int) -> list[list[int]]:
    """Random recursive tree with bounded degree: node i attaches uniformly
    to an earlier node that still has attachment capacity. The cap keeps
    radius-bounded balls (and with them clique sizes) from concentrating at
    log-degree hubs."""
    nbrs: list[list[int]] = [[] for _ in range(m)]
    eligible = [0]
    for i in range(1, m):
        j = rng.randint(0, len(eligible) - 1)
        p = eligible[j]
        nbrs[i].append(p)
        nbrs[p].append(i)
        if len(nbrs[p]) >= _TREE_DEGREE_CAP:
            eligible[j] = eligible[-1]
            eligible.pop()
        eligible.append(i)
    return nbrs


def _ball(nbrs: list[list[int]], center: int, radius: int) -> list[int]:
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def gen_chordal(cfg: GenConfig) -> tuple[WeightedGraph, CliqueTree]:
    """Random chordal graph by subtree intersection on a random host tree.

    Every vertex receives a BFS ball (radius <= subtree_span) in the host
    tree; vertices are adjacent iff their balls meet. The returned clique
    tree is rebuilt from the graph's own maximal cliques, not the generator
    scaffolding, and the graph is re-verified chordal.
    """
    rng = SplitMix64(cfg.seed)
    m = cfg.tree_nodes
    nbrs = _random_tree(rng, m)
    occupants = [0] * m                     # per tree node, vertex mask
    for v in range(cfg.n):
        center = rng.randint(0, m - 1)
        radius = rng.randint(0, cfg.subtree_span)
        for t in _ball(nbrs, center, radius):
            occupants[t] |= 1 << v
    adj = [0] * cfg.n
    for t in range(m):
        occ = occupants[t]
        for v in bits(occ):
            adj[v] |= occ
    for v in range(cfg.n):
        adj[v] &= ~(1 << v)
    g = gen_weights(cfg, WeightedGraph.from_adj_masks(adj, [0] * cfg.n))
    peo = recognize_chordal(g)
    tree = build_clique_tree(g, maximal_cliques(g, peo))
    return g, tree


def gen_interval(cfg: GenConfig) -> WeightedGraph:
    """Random integer intervals on a 2n lattice; adjacency = intersection.

    Interval length is uniform in [0, max(1, subtree_span)].
    """
    rng = SplitMix64(cfg.seed)
    span = max(1, cfg.subtree_span)
    ivals = []
    for _ in range(cfg.n):
        lo = rng.randint(0, 2 * cfg.n)
        ivals.append((lo, lo + rng.randint(0, span)))
    adj = [0] * cfg.n
    for u in range(cfg.n):
        for v in range(u + 1, cfg.n):
            if ivals[u][0] <= ivals[v][1] and ivals[v][0] <= ivals[u][1]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return gen_weights(cfg, WeightedGraph.from_adj_masks(adj, [0] * cfg.n))


def generate(cfg: GenConfig) -> WeightedGraph:
    if cfg.family == "chordal":
        return gen_chordal(cfg)[0]
    if cfg.family == "interval":
        return gen_interval(cfg)
    if cfg.family == "clique":
        adj = [((1 << cfg.n) - 1) & ~(1 << v) for v in range(cfg.n)]
        return gen_weights(cfg, WeightedGraph.from_adj_masks(adj, [0] * cfg.n))
    if cfg.family == "path":
        edges = [(i, i + 1) for i in range(cfg.n - 1)]
        return gen_weights(cfg, WeightedGraph(cfg.n, edges, [0] * cfg.n))
    raise ValueError(f"unknown family {cfg.family!r}")


def describe(cfg: GenConfig) -> str:
    lo, hi = cfg.weight_range
    return (f"family={cfg.family} seed={cfg.seed} n={cfg.n} "
            f"tree_nodes={cfg.tree_nodes} subtree_span={cfg.subtree_span} "
            f"weights={lo}:{hi} prng={PRNG_ID}")
