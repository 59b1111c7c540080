"""Bottom-up dynamic program over a rooted clique tree.

Each tree node K owns the subproblem on the vertices that occur only inside
its subtree (vertices shared with the parent clique are excluded). A node's
optimum either avoids K entirely (children sum) or contains a unique cluster
meeting K; that cluster lives inside a single descendant clique Q, and with
an anchor vertex v fixed, its remaining vertices maximize a supermodular set
function, so the inner step is exact subset enumeration on small cliques and
min-norm-point submodular minimization on large ones.

The per-evaluation residual value (what remains after deleting a cluster and
its neighborhood) is read off the table by pruning the subtree at the
highest nodes whose vertex sets avoid the deleted neighborhood.

The solver is sequential per instance; a finished table is immutable, so
evaluations against it may run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import WeightedGraph, bits
from .chordal import CliqueTree, validate_clique_tree
from .solution import ClusterSolution, validate_solution
from .supermodular import EXHAUSTIVE_CAP, SetFunctionOracle, maximize_supermodular


class InvalidCliqueTreeError(ValueError):
    pass


@dataclass
class DpTable:
    """Optimal value per tree node, with the choice that realizes it.

    choice[k] is None for the children-sum branch, else (q, v, x_mask):
    cluster x_mask | {v} inside clique q, anchored at v in k's clique.
    """

    psi: list[int]
    choice: list[tuple[int, int, int] | None]


@dataclass
class ResidualDecomposition:
    """Highest surviving subtree roots after a removal, and their value sum."""

    roots: list[int]
    value: int


class ChordalDp:
    def __init__(self, g: WeightedGraph, tree: CliqueTree,
                 exhaustive_cap: int = EXHAUSTIVE_CAP, mnp_tol: float = 1e-9,
                 validate: bool = True):
        if validate and not validate_clique_tree(g, tree):
            raise InvalidCliqueTreeError("clique tree fails validation")
        self.g = g
        self.tree = tree
        self.exhaustive_cap = exhaustive_cap
        self.mnp_tol = mnp_tol
        self.table: DpTable | None = None
        self.stats = {"fv_evaluations": 0, "cluster_pairs": 0, "mnp_pairs": 0}
        n_nodes = len(tree)
        # Subtree membership via DFS entry/exit times.
        tin = [0] * n_nodes
        tout = [0] * n_nodes
        clock = 0
        stack: list[tuple[int, bool]] = [(tree.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                tout[node] = clock
                continue
            tin[node] = clock
            clock += 1
            stack.append((node, True))
            for c in tree.children[node]:
                stack.append((c, False))
        self._tin, self._tout = tin, tout
        nodes_of: list[list[int]] = [[] for _ in range(g.n)]
        for i, m in enumerate(tree.cliques):
            for v in bits(m):
                nodes_of[v].append(i)
        self._nodes_of = nodes_of

    def in_subtree(self, k: int, q: int) -> bool:
        return self._tin[k] <= self._tin[q] and self._tout[q] <= self._tout[k]

    def cluster_candidates(self, k: int) -> list[tuple[int, int]]:
        """(q, v) pairs: q a subtree node of k, v in q's and k's cliques but
        not the parent clique. Sorted for deterministic tie-breaking."""
        t = self.tree
        own = t.cliques[k] & ~t.parent_clique(k)
        pairs = []
        for v in bits(own):
            for q in self._nodes_of[v]:
                if self.in_subtree(k, q):
                    pairs.append((q, v))
        pairs.sort()
        return pairs

    def ground_mask(self, k: int, q: int, v: int) -> int:
        return self.tree.cliques[q] & ~self.tree.parent_clique(k) & ~(1 << v)

    # -- residual evaluation ------------------------------------------------

    def residual_value(self, k: int, removed: int) -> int:
        children = self.tree.children
        sv = self.tree.subtree_vertices
        psi = self.table.psi
        total = 0
        stack = list(children[k])
        while stack:
            z = stack.pop()
            s = sv[z]
            hit = s & removed
            if not hit:
                total += psi[z]
            elif hit != s:
                stack.extend(children[z])
        return total

    def residual_decompose(self, k: int, removed: int) -> ResidualDecomposition:
        children = self.tree.children
        sv = self.tree.subtree_vertices
        psi = self.table.psi
        roots = []
        total = 0
        stack = list(children[k])
        while stack:
            z = stack.pop()
            s = sv[z]
            hit = s & removed
            if not hit:
                roots.append(z)
                total += psi[z]
            elif hit != s:
                stack.extend(children[z])
        roots.sort()
        return ResidualDecomposition(roots=roots, value=total)

    # -- inner maximization ---------------------------------------------------

    def evaluate_f(self, k: int, q: int, v: int, x_mask: int) -> int:
        """Cluster value: weight of x|{v} plus the table value of what
        survives outside its closed neighborhood."""
        t = self.tree
        own = t.cliques[k] & ~t.parent_clique(k)
        assert self.in_subtree(k, q)
        assert own >> v & 1 and t.cliques[q] >> v & 1
        assert x_mask & ~self.ground_mask(k, q, v) == 0
        cluster = x_mask | (1 << v)
        removed = self.g.closed_neighborhood(cluster)
        self.stats["fv_evaluations"] += 1
        return self.residual_value(k, removed) + self.g.weight_of(cluster)

    def fv_oracle(self, k: int, q: int, v: int) -> SetFunctionOracle:
        gverts = list(bits(self.ground_mask(k, q, v)))

        def eval_mask(m: int) -> int:
            x = 0
            for i in bits(m):
                x |= 1 << gverts[i]
            return self.evaluate_f(k, q, v, x)

        return SetFunctionOracle(ground=gverts, eval_mask=eval_mask)

    def _max_fv(self, k: int, q: int, v: int) -> tuple[int, int]:
        """Max of the cluster objective over subsets of the ground set.

        Returns (value, x_mask over vertices). Exhaustive (smallest-mask tie
        break) below the cap, min-norm-point above it.
        """
        g = self.g
        t = self.tree
        gverts = list(bits(self.ground_mask(k, q, v)))
        size = len(gverts)
        self.stats["cluster_pairs"] += 1
        if size > self.exhaustive_cap:
            self.stats["mnp_pairs"] += 1
            res = maximize_supermodular(self.fv_oracle(k, q, v),
                                        exhaustive_cap=self.exhaustive_cap,
                                        tol=self.mnp_tol)
            x = 0
            for i in bits(res.argmax):
                x |= 1 << gverts[i]
            return res.value, x

        cn = g.cnbr
        wts = g.weights
        children = self.tree.children
        sv = t.subtree_vertices
        psi = self.table.psi
        base_nb = cn[v]
        wv = wts[v]
        # Children whose subtrees can never meet the removed set contribute a
        # constant; only the rest need per-subset inspection.
        reach_full = base_nb
        for u in gverts:
            reach_full |= cn[u]
        const = 0
        seed = []
        for c in children[k]:
            s = sv[c]
            if not s & reach_full:
                const += psi[c]
            else:
                seed.append(c)
        best = -1
        best_x = 0
        evals = 0
        # DFS over include/exclude decisions; O(size) memory.
        stack = [(0, base_nb, 0, 0)]
        while stack:
            i, nbm, wm, xm = stack.pop()
            if i < size:
                u = gverts[i]
                stack.append(((i + 1), nbm | cn[u], wm + wts[u], xm | (1 << u)))
                stack.append(((i + 1), nbm, wm, xm))
                continue
            total = const + wm + wv
            st = list(seed)
            while st:
                z = st.pop()
                s = sv[z]
                hit = s & nbm
                if not hit:
                    total += psi[z]
                elif hit != s:
                    st.extend(children[z])
            evals += 1
            if total > best:
                best, best_x = total, xm
            elif total == best and xm < best_x:
                best_x = xm
        self.stats["fv_evaluations"] += evals
        return best, best_x

    # -- the DP ---------------------------------------------------------------

    def _evaluate_node(self, k: int) -> tuple[int, tuple[int, int, int] | None]:
        """Value and argmax choice for node k, reading only descendants'
        table entries. Children sum wins ties; cluster choices compare
        lexicographically by (q, v, x)."""
        t = self.tree
        psi = self.table.psi
        own = t.cliques[k] & ~t.parent_clique(k)
        if not t.children[k]:
            w_own = self.g.weight_of(own)
            if w_own == 0:
                return 0, None
            v0 = (own & -own).bit_length() - 1
            rest = own & ~(1 << v0)
            x_star = 0
            for u in bits(rest):
                if self.g.weights[u]:
                    x_star |= 1 << u
            return w_own, (k, v0, x_star)
        best = sum(psi[c] for c in t.children[k])
        best_choice: tuple[int, int, int] | None = None
        for q, v in self.cluster_candidates(k):
            val, x = self._max_fv(k, q, v)
            if val > best:
                best = val
                best_choice = (q, v, x)
        return best, best_choice

    def node_value(self, k: int) -> tuple[int, tuple[int, int, int] | None]:
        if self.table is None:
            raise RuntimeError("solve() first")
        return self._evaluate_node(k)

    def solve(self) -> tuple[int, ClusterSolution, DpTable]:
        n_nodes = len(self.tree)
        self.table = DpTable(psi=[0] * n_nodes, choice=[None] * n_nodes)
        for k in self.tree.postorder:
            value, choice = self._evaluate_node(k)
            self.table.psi[k] = value
            self.table.choice[k] = choice
        solution = self.reconstruct()
        ok, why = validate_solution(self.g, solution)
        assert ok, why
        assert solution.weight == self.table.psi[self.tree.root]
        return self.table.psi[self.tree.root], solution, self.table

    def reconstruct(self) -> ClusterSolution:
        if self.table is None:
            raise RuntimeError("solve() first")
        t = self.tree
        picked = 0
        stack = [t.root]
        while stack:
            k = stack.pop()
            ch = self.table.choice[k]
            if ch is None:
                stack.extend(t.children[k])
                continue
            q, v, x = ch
            cluster = x | (1 << v)
            picked |= cluster
            removed = self.g.closed_neighborhood(cluster)
            stack.extend(self.residual_decompose(k, removed).roots)
        return ClusterSolution.from_vertices(self.g, picked)


def solve_chordal(g: WeightedGraph, tree: CliqueTree,
                  exhaustive_cap: int = EXHAUSTIVE_CAP, mnp_tol: float = 1e-9,
                  validate: bool = True) -> tuple[int, ClusterSolution, DpTable]:
    if g.n == 0:
        return 0, ClusterSolution(0, (), 0), DpTable(psi=[], choice=[])
    solver = ChordalDp(g, tree, exhaustive_cap=exhaustive_cap, mnp_tol=mnp_tol,
                       validate=validate)
    return solver.solve()
