"""Dynamic program over a clique path.

States are prefixes of the clique path: state p scores the best induced
cluster subgraph among vertices that occur only in the first p cliques.
A transition fixes the boundary i where the last ("rightmost") cluster
starts and takes the heaviest residual clique strictly right of it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import WeightedGraph, bits
from .chordal import is_valid_clique_path
from .solution import ClusterSolution, validate_solution


class InvalidCliquePathError(ValueError):
    pass


@dataclass
class IntervalDpTable:
    """psi[p] for p = 0..ell (boundary clique indices are 1-based; index 0
    and ell+1 act as empty sentinel cliques). choice[p] = (i, j): continue
    from state i, taking cluster K_j minus (K_i | K_{p+1}); None at p = 0."""

    psi: list[int]
    choice: list[tuple[int, int] | None]
    ops: int = 0


def _clique_at(path: list[int], q: int) -> int:
    # 1-based with empty sentinels at 0 and ell+1
    return path[q - 1] if 1 <= q <= len(path) else 0


def rightmost_cluster_weight(g: WeightedGraph, path: list[int], i: int, p: int) -> int:
    """max over j in (i, p] of the weight of K_j minus (K_i | K_{p+1})."""
    ell = len(path)
    if not 0 <= i < p <= ell:
        raise ValueError(f"need 0 <= i < p <= {ell}, got i={i} p={p}")
    excluded = _clique_at(path, i) | _clique_at(path, p + 1)
    return max(g.weight_of(_clique_at(path, j) & ~excluded) for j in range(i + 1, p + 1))


def solve_interval(g: WeightedGraph, path: list[int]) -> tuple[int, ClusterSolution, IntervalDpTable]:
    if g.n == 0:
        table = IntervalDpTable(psi=[0], choice=[None])
        return 0, ClusterSolution(0, (), 0), table
    if not is_valid_clique_path(g, path):
        raise InvalidCliquePathError("not a valid clique path of the graph")
    ell = len(path)
    wts = g.weights

    # Each vertex occupies a consecutive clique range [lo_v, hi_v] (1-based).
    lo = [0] * g.n
    hi = [0] * g.n
    for q, m in enumerate(path, start=1):
        for v in bits(m):
            if not lo[v]:
                lo[v] = q
            hi[v] = q
    starts: list[list[int]] = [[] for _ in range(ell + 2)]
    for v in range(g.n):
        starts[lo[v]].append(v)

    psi = [0] * (ell + 1)
    choice: list[tuple[int, int] | None] = [None] * (ell + 1)
    ops = 0

    for p in range(1, ell + 1):
        # Sweep the boundary i downward, keeping val[j] = weight of K_j minus
        # (K_i | K_{p+1}) for j in (i, p]. Weights only grow as i drops, so a
        # running (max, smallest-j) pair stays exact.
        val = [0] * (p + 1)
        cur = -1
        cur_j = -1
        cand_val = [0] * p
        cand_j = [0] * p
        for i in range(p - 1, -1, -1):
            for v in starts[i + 1]:
                if hi[v] > p:
                    continue
                wv = wts[v]
                if not wv:
                    continue
                for j in range(i + 1, hi[v] + 1):
                    nv = val[j] + wv
                    val[j] = nv
                    ops += 1
                    if nv > cur:
                        cur, cur_j = nv, j
                    elif nv == cur and j < cur_j:
                        cur_j = j
            j0 = i + 1
            if val[j0] > cur:
                cur, cur_j = val[j0], j0
            elif val[j0] == cur and j0 < cur_j:
                cur_j = j0
            cand_val[i] = psi[i] + cur
            cand_j[i] = cur_j
            ops += 1
        best_i = max(range(p), key=lambda i: (cand_val[i], -i))
        psi[p] = cand_val[best_i]
        choice[p] = (best_i, cand_j[best_i])

    table = IntervalDpTable(psi=psi, choice=choice, ops=ops)
    solution = _reconstruct(g, path, table)
    ok, why = validate_solution(g, solution)
    assert ok, why
    assert solution.weight == psi[ell]
    return psi[ell], solution, table


def _reconstruct(g: WeightedGraph, path: list[int], table: IntervalDpTable) -> ClusterSolution:
    clusters = []
    p = len(path)
    while p > 0:
        i, j = table.choice[p]
        cluster = _clique_at(path, j) & ~(_clique_at(path, i) | _clique_at(path, p + 1))
        if cluster:
            clusters.append(cluster)
        p = i
    vertices = 0
    for c in clusters:
        vertices |= c
    return ClusterSolution(vertices=vertices, clusters=tuple(reversed(clusters)),
                           weight=g.weight_of(vertices))
