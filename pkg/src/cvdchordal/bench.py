"""Timing harness: per-phase wall times and oracle-call counts across sizes."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .chordal import build_clique_tree, maximal_cliques, recognize_chordal, try_clique_path
from .chordal_dp import ChordalDp
from .generators import GenConfig, gen_interval, gen_weights, generate
from .graph import WeightedGraph
from .interval_dp import solve_interval


@dataclass
class BenchRow:
    family: str
    n: int
    seed: int
    cliques: int
    max_clique: int
    psi: int
    fv_evaluations: int
    gen_ms: float
    structure_ms: float
    solve_ms: float

    @property
    def total_ms(self) -> float:
        return self.gen_ms + self.structure_ms + self.solve_ms


def _bench_config(family: str, n: int, seed: int) -> GenConfig:
    if family == "chordal":
        return GenConfig(n=n, seed=seed, tree_nodes=max(1, n // 2), subtree_span=1,
                         weight_range=(0, 10), family="chordal")
    return GenConfig(n=n, seed=seed, subtree_span=4, weight_range=(0, 10), family=family)


def make_instance(family: str, n: int, seed: int,
                  max_clique_cap: int | None = None, tries: int = 64) -> tuple[WeightedGraph, int]:
    """Deterministic instance for (family, n, seed); if a clique cap is given,
    advance the seed until the cap is met."""
    for s in range(seed, seed + tries):
        g = generate(_bench_config(family, n, s))
        if max_clique_cap is None:
            return g, s
        peo = recognize_chordal(g)
        if max(m.bit_count() for m in maximal_cliques(g, peo)) <= max_clique_cap:
            return g, s
    raise RuntimeError(f"no instance with max clique <= {max_clique_cap} in {tries} seeds")


def run_one(family: str, n: int, seed: int, max_clique_cap: int | None = None) -> BenchRow:
    t0 = time.perf_counter()
    g, used_seed = make_instance(family, n, seed, max_clique_cap)
    t1 = time.perf_counter()
    peo = recognize_chordal(g)
    cliques = maximal_cliques(g, peo)
    if family == "interval":
        path = try_clique_path(g, cliques)
        t2 = time.perf_counter()
        if path is not None:
            value, _, table = solve_interval(g, path)
            t3 = time.perf_counter()
            return BenchRow(family=family, n=n, seed=used_seed, cliques=len(cliques),
                            max_clique=max(m.bit_count() for m in cliques), psi=value,
                            fv_evaluations=table.ops,
                            gen_ms=(t1 - t0) * 1e3, structure_ms=(t2 - t1) * 1e3,
                            solve_ms=(t3 - t2) * 1e3)
    tree = build_clique_tree(g, cliques)
    t2 = time.perf_counter()
    solver = ChordalDp(g, tree, validate=False)
    value, _, _ = solver.solve()
    t3 = time.perf_counter()
    return BenchRow(family=family, n=n, seed=used_seed, cliques=len(cliques),
                    max_clique=max(m.bit_count() for m in cliques), psi=value,
                    fv_evaluations=solver.stats["fv_evaluations"],
                    gen_ms=(t1 - t0) * 1e3, structure_ms=(t2 - t1) * 1e3,
                    solve_ms=(t3 - t2) * 1e3)


def run_bench(family: str, sizes: list[int], reps: int = 3, seed: int = 1,
              max_clique_cap: int | None = None) -> list[BenchRow]:
    """Median-solve-time representative row per size (rep rows collapse to
    the one with the median solve time)."""
    rows = []
    for n in sizes:
        reps_rows = [run_one(family, n, seed + 1000 * r, max_clique_cap)
                     for r in range(reps)]
        reps_rows.sort(key=lambda r: r.solve_ms)
        rows.append(reps_rows[len(reps_rows) // 2])
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    header = ("family,n,seed,cliques,max_clique,psi,fv_evaluations,"
              "gen_ms,structure_ms,solve_ms,total_ms")
    out = [header]
    for r in rows:
        out.append(f"{r.family},{r.n},{r.seed},{r.cliques},{r.max_clique},{r.psi},"
                   f"{r.fv_evaluations},{r.gen_ms:.2f},{r.structure_ms:.2f},"
                   f"{r.solve_ms:.2f},{r.total_ms:.2f}")
    return "\n".join(out) + "\n"


def rows_to_text(rows: list[BenchRow]) -> str:
    out = [f"{'family':<9} {'n':>6} {'cliques':>8} {'maxK':>5} {'psi':>10} "
           f"{'fv-evals':>10} {'gen':>9} {'struct':>9} {'solve':>10}"]
    for r in rows:
        out.append(f"{r.family:<9} {r.n:>6} {r.cliques:>8} {r.max_clique:>5} "
                   f"{r.psi:>10} {r.fv_evaluations:>10} {r.gen_ms:>8.1f}ms "
                   f"{r.structure_ms:>8.1f}ms {r.solve_ms:>9.1f}ms")
    return "\n".join(out) + "\n"
