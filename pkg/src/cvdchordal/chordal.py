"""Chordality recognition, maximal cliques, clique trees and clique paths.

Recognition runs maximum cardinality search and then verifies the candidate
elimination ordering; on failure a hole (induced cycle of length >= 4) is
extracted and re-verified, so both outcomes are self-certifying.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import WeightedGraph, bits, mask_of


class NotChordalError(Exception):
    """Raised when a graph contains a hole; carries the certifying cycle."""

    def __init__(self, hole: list[int]):
        super().__init__(f"graph is not chordal: induced cycle {hole}")
        self.hole = hole


def maximum_cardinality_search(g: WeightedGraph) -> list[int]:
    """MCS vertex order (first selected first). Reversed, it is a PEO
    candidate: accept only after `verify_peo`."""
    n = g.n
    counts = [0] * n
    numbered = 0
    order = []
    for _ in range(n):
        best, best_c = -1, -1
        for v in range(n):
            if not numbered >> v & 1 and counts[v] > best_c:
                best, best_c = v, counts[v]
        order.append(best)
        numbered |= 1 << best
        for u in bits(g.adj[best] & ~numbered):
            counts[u] += 1
    return order


def verify_peo(g: WeightedGraph, order: list[int]) -> tuple[int, int, int] | None:
    """Check that each vertex's later neighbors form a clique.

    Returns None on success, else a violating triple (v, u, w) with u, w
    later neighbors of v and u, w nonadjacent.
    """
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertices")
    later = [0] * g.n
    after = 0
    for v in reversed(order):
        later[v] = g.adj[v] & after
        after |= 1 << v
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    for v in order:
        m = later[v]
        if not m:
            continue
        u = min(bits(m), key=pos.__getitem__)
        out = m & ~g.cnbr[u]
        if out:
            w = (out & -out).bit_length() - 1
            return (v, u, w)
    return None


def verify_hole(g: WeightedGraph, cycle: list[int]) -> bool:
    """True iff ``cycle`` is an induced cycle of length at least four."""
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i, v in enumerate(cycle):
        nxt = cycle[(i + 1) % k]
        if not g.adj[v] >> nxt & 1:
            return False
        others = mask_of(cycle) & ~(1 << v) & ~(1 << nxt) & ~(1 << cycle[i - 1])
        if g.adj[v] & others:
            return False
    return True


def _shortest_path(g: WeightedGraph, src: int, dst: int, allowed: int) -> list[int] | None:
    """BFS path from src to dst inside ``allowed`` (which contains both)."""
    prev = {src: -1}
    frontier = deque([src])
    seen = 1 << src
    while frontier:
        v = frontier.popleft()
        if v == dst:
            path = []
            while v != -1:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for u in bits(g.adj[v] & allowed & ~seen):
            seen |= 1 << u
            prev[u] = v
            frontier.append(u)
    return None


def find_hole(g: WeightedGraph, hint: tuple[int, int, int] | None = None) -> list[int] | None:
    """Search for an induced cycle of length >= 4; None iff there is none.

    For nonadjacent u, w in N(v), any shortest u-w path avoiding the rest of
    N[v] closes into an induced cycle through v. Every hole arises this way
    from any of its vertices, so the scan is exhaustive.
    """

    def try_triple(v: int, u: int, w: int) -> list[int] | None:
        allowed = g.full_mask & ~(g.cnbr[v] & ~(1 << u) & ~(1 << w))
        path = _shortest_path(g, u, w, allowed)
        if path is None:
            return None
        cycle = [v] + path
        assert verify_hole(g, cycle)
        return cycle

    if hint is not None:
        got = try_triple(*hint)
        if got is not None:
            return got
    for v in range(g.n):
        nb = list(bits(g.adj[v]))
        for i, u in enumerate(nb):
            for w in nb[i + 1:]:
                if g.adj[u] >> w & 1:
                    continue
                got = try_triple(v, u, w)
                if got is not None:
                    return got
    return None


def recognize_chordal(g: WeightedGraph) -> list[int]:
    """Return a verified perfect elimination ordering, or raise
    NotChordalError with a verified hole certificate."""
    order = maximum_cardinality_search(g)[::-1]
    bad = verify_peo(g, order)
    if bad is None:
        return order
    hole = find_hole(g, hint=bad)
    assert hole is not None, "PEO check failed on a chordal graph"
    raise NotChordalError(hole)


def is_chordal(g: WeightedGraph) -> bool:
    try:
        recognize_chordal(g)
        return True
    except NotChordalError:
        return False


def maximal_cliques(g: WeightedGraph, peo: list[int]) -> list[int]:
    """All maximal cliques (as masks) of a chordal graph, given a PEO.

    Every maximal clique is {v} | later-neighbors(v) for the clique member
    eliminated first, so filtering those candidates for set-maximality is
    exact.
    """
    later = [0] * g.n
    after = 0
    for v in reversed(peo):
        later[v] = g.adj[v] & after
        after |= 1 << v
    candidates = sorted({(1 << v) | later[v] for v in peo},
                        key=lambda m: (-m.bit_count(), m))
    out: list[int] = []
    for c in candidates:
        if not any(c & ~big == 0 for big in out):
            out.append(c)
    return out


@dataclass
class CliqueTree:
    """Rooted clique tree: nodes are maximal cliques (masks over V).

    ``subtree_vertices[z]`` is the vertex set owned by the subtree at z:
    the union of its cliques minus the parent clique of z.
    """

    cliques: list[int]
    parent: list[int]                 # -1 at the root
    children: list[list[int]]
    root: int
    subtree_vertices: list[int] = field(default_factory=list)
    postorder: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.postorder:
            order: list[int] = []
            stack = [self.root]
            while stack:
                k = stack.pop()
                order.append(k)
                stack.extend(self.children[k])
            self.postorder = order[::-1]
        if not self.subtree_vertices:
            cover = [0] * len(self.cliques)
            sv = [0] * len(self.cliques)
            for k in self.postorder:
                cover[k] = self.cliques[k]
                for c in self.children[k]:
                    cover[k] |= cover[c]
                p = self.parent[k]
                sv[k] = cover[k] & ~(self.cliques[p] if p >= 0 else 0)
            self.subtree_vertices = sv

    def __len__(self) -> int:
        return len(self.cliques)

    def parent_clique(self, k: int) -> int:
        p = self.parent[k]
        return self.cliques[p] if p >= 0 else 0

    def subtree_nodes(self, k: int) -> list[int]:
        out = []
        stack = [k]
        while stack:
            z = stack.pop()
            out.append(z)
            stack.extend(self.children[z])
        return out


def build_clique_tree(g: WeightedGraph, cliques: list[int]) -> CliqueTree:
    """Clique tree via a maximum-weight spanning tree of the clique
    intersection graph (edge weight = separator size), rooted at the largest
    clique (lowest id on ties)."""
    k = len(cliques)
    if k == 0:
        raise ValueError("no cliques: empty graph has no clique tree")
    root = max(range(k), key=lambda i: (cliques[i].bit_count(), -i))
    # Prim from the root; ties go to the lowest-id attachment for determinism.
    in_tree = [False] * k
    best_w = [-1] * k
    best_to = [-1] * k
    in_tree[root] = True
    for j in range(k):
        if j != root:
            best_w[j] = (cliques[root] & cliques[j]).bit_count()
            best_to[j] = root
    parent = [-1] * k
    for _ in range(k - 1):
        i = -1
        for j in range(k):
            if not in_tree[j] and (i == -1 or best_w[j] > best_w[i]):
                i = j
        in_tree[i] = True
        parent[i] = best_to[i]
        for j in range(k):
            if not in_tree[j]:
                w = (cliques[i] & cliques[j]).bit_count()
                if w > best_w[j]:
                    best_w[j] = w
                    best_to[j] = i
    children: list[list[int]] = [[] for _ in range(k)]
    for i in range(k):
        if parent[i] >= 0:
            children[parent[i]].append(i)
    return CliqueTree(cliques=list(cliques), parent=parent, children=children, root=root)


def validate_clique_tree(g: WeightedGraph, t: CliqueTree) -> bool:
    """Exhaustively check every clique-tree invariant."""
    k = len(t.cliques)
    if k == 0 or k > max(g.n, 1):
        return False
    if len(set(t.cliques)) != k:
        return False
    # Tree shape: one root, parent/children consistent, connected.
    if t.parent[t.root] != -1:
        return False
    reached = set(t.subtree_nodes(t.root))
    if len(reached) != k:
        return False
    for c in range(k):
        if c != t.root and (t.parent[c] < 0 or c not in t.children[t.parent[c]]):
            return False
    # Each node: a maximal clique; no vertex outside is adjacent to all of it.
    covered = 0
    for m in t.cliques:
        if not m or not g.is_clique(m):
            return False
        common = g.full_mask
        for v in bits(m):
            common &= g.cnbr[v]
        if common & ~m:
            return False
        covered |= m
    if covered != g.full_mask:
        return False
    # Every edge inside some node (with the Helly property this makes the
    # node set exactly the maximal cliques).
    node_mask = [0] * g.n            # per vertex, bitmask of tree nodes containing it
    for i, m in enumerate(t.cliques):
        for v in bits(m):
            node_mask[v] |= 1 << i
    for u, v in g.edges():
        if not node_mask[u] & node_mask[v]:
            return False
    # Subtree property per vertex.
    tree_nbr = [0] * k
    for c in range(k):
        p = t.parent[c]
        if p >= 0:
            tree_nbr[c] |= 1 << p
            tree_nbr[p] |= 1 << c
    for v in range(g.n):
        ids = node_mask[v]
        comp = ids & -ids
        while True:
            grow = 0
            for i in bits(comp):
                grow |= tree_nbr[i]
            grow &= ids & ~comp
            if not grow:
                break
            comp |= grow
        if comp != ids:
            return False
    # Subtree vertex sets match their definition; root owns everything.
    cover = [0] * k
    for z in t.postorder:
        cover[z] = t.cliques[z]
        for c in t.children[z]:
            cover[z] |= cover[c]
        if t.subtree_vertices[z] != cover[z] & ~t.parent_clique(z):
            return False
    if t.subtree_vertices[t.root] != g.full_mask:
        return False
    # Children of one node own pairwise disjoint, mutually nonadjacent sets.
    for z in range(k):
        acc = 0
        for c in t.children[z]:
            s = t.subtree_vertices[c]
            if s & acc or g.closed_neighborhood(s) & acc:
                return False
            acc |= s
    return True


def is_valid_clique_path(g: WeightedGraph, path: list[int]) -> bool:
    """Check the consecutiveness invariant plus clique-tree-style coverage."""
    if len(set(path)) != len(path):
        return False
    covered = 0
    for m in path:
        if not m or not g.is_clique(m):
            return False
        common = g.full_mask
        for v in bits(m):
            common &= g.cnbr[v]
        if common & ~m:
            return False
        covered |= m
    if covered != g.full_mask:
        return False
    node_mask = [0] * g.n
    for i, m in enumerate(path):
        for v in bits(m):
            node_mask[v] |= 1 << i
    for u, v in g.edges():
        if not node_mask[u] & node_mask[v]:
            return False
    for v in range(g.n):
        hits = node_mask[v]
        lo = (hits & -hits).bit_length() - 1
        hi = hits.bit_length() - 1
        if hits != ((1 << (hi + 1)) - 1) & ~((1 << lo) - 1):
            return False
    return True


def try_clique_path(g: WeightedGraph, cliques: list[int], budget: int = 50_000) -> list[int] | None:
    """Arrange the maximal cliques into a clique path, or None.

    Left-to-right search: after placing a prefix P, any vertex occurring both
    in P and in an unplaced clique must occur in the next clique, so the
    candidates are the unplaced cliques containing all such active vertices.
    Dead remaining-sets are memoized; the search gives up (None) past
    ``budget`` states, which only ever under-reports interval graphs, never
    mis-reports. The returned arrangement is always validated.
    """
    ell = len(cliques)
    if ell <= 1:
        return list(cliques)
    # occ[v] = number of unplaced cliques containing v; rest = {v: occ[v] > 0}
    occ = [0] * g.n
    rest = 0
    for m in cliques:
        for v in bits(m):
            occ[v] += 1
    for v in range(g.n):
        if occ[v]:
            rest |= 1 << v

    def place(i: int) -> None:
        nonlocal rest
        for v in bits(cliques[i]):
            occ[v] -= 1
            if not occ[v]:
                rest &= ~(1 << v)

    def unplace(i: int) -> None:
        nonlocal rest
        for v in bits(cliques[i]):
            if not occ[v]:
                rest |= 1 << v
            occ[v] += 1

    def candidates(placed_mask: int, remaining: frozenset[int]) -> list[int]:
        active = placed_mask & rest
        return [i for i in sorted(remaining) if not active & ~cliques[i]]

    dead: set[frozenset[int]] = set()
    states = 0
    start = frozenset(range(ell))
    frames = [[0, start, candidates(0, start), 0]]
    acc: list[int] = []
    found = False
    while frames:
        placed, remaining, cands, idx = frames[-1]
        if not remaining:
            found = True
            break
        if idx >= len(cands):
            dead.add(remaining)
            frames.pop()
            if acc:
                unplace(acc.pop())
            continue
        frames[-1][3] += 1
        states += 1
        if states > budget:
            return None
        i = cands[idx]
        nxt = remaining - {i}
        if nxt in dead:
            continue
        acc.append(i)
        place(i)
        nxt_placed = placed | cliques[i]
        frames.append([nxt_placed, nxt, candidates(nxt_placed, nxt), 0])
    if not found:
        return None
    path = [cliques[i] for i in acc]
    if not is_valid_clique_path(g, path):
        return None
    return path
