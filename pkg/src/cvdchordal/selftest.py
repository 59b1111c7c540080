"""Randomized property suites tying the solvers to their oracles.

Each suite derives its instances deterministically from a seed range, so a
reported failure is reproducible from the seed alone; on failure the
offending instance is dumped as a graph file next to a JSON context. Seeds
run independently (optionally across CVD_THREADS worker processes) and the
results merge in seed order, so the output never depends on scheduling.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .chordal import build_clique_tree, maximal_cliques, recognize_chordal, try_clique_path
from .chordal_dp import ChordalDp
from .generators import GenConfig, SplitMix64, gen_chordal, gen_interval
from .graph import bits
from .graphio import serialize_graph
from .interval_dp import solve_interval
from .oracle import BruteOracle, check_supermodularity_of_g, check_theorem2_construction
from .supermodular import SetFunctionOracle, maximize_supermodular, minimize_submodular_mnp

SUITES = ("dp", "supermodular", "theorem2")


@dataclass
class SuiteResult:
    name: str
    runs: int = 0
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed_s: float = 0.0
    artifacts: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"name": self.name, "runs": self.runs, "checks": self.checks,
                "failures": self.failures, "elapsed_s": round(self.elapsed_s, 3),
                "artifacts": self.artifacts, "ok": self.ok}


def _instance_config(seed: int, max_n: int, family: str) -> GenConfig:
    rng = SplitMix64((seed << 8) ^ 0xC0FFEE)
    n = rng.randint(4, max_n)
    return GenConfig(n=n, seed=seed, tree_nodes=max(1, rng.randint(1, max(1, n // 2))),
                     subtree_span=rng.randint(0, 2), weight_range=(0, 10), family=family)


def small_chordal(seed: int, max_n: int = 16):
    return gen_chordal(_instance_config(seed, max_n, "chordal"))


def small_interval(seed: int, max_n: int = 16):
    return gen_interval(_instance_config(seed, max_n, "interval"))


def dp_seed_check(seed: int, max_n: int = 16, residual_queries: int = 20) -> dict:
    """One dp-suite seed: solver vs brute on a chordal and an interval
    instance, plus residual-decomposition set identities."""
    checks = 0
    failures: list[dict] = []
    g, tree = small_chordal(seed, max_n)
    solver = ChordalDp(g, tree)
    value, _, _ = solver.solve()
    brute_value, _ = BruteOracle(g).best_subset()
    checks += 1
    if value != brute_value:
        failures.append({"seed": seed, "kind": "chordal-vs-brute", "family": "chordal",
                         "got": value, "want": brute_value})
    else:
        rng = SplitMix64((seed << 16) ^ 0xD00D)
        done = 0
        for k in tree.postorder:
            if done >= residual_queries:
                break
            pairs = solver.cluster_candidates(k)
            if not pairs:
                continue
            q, v = pairs[rng.randint(0, len(pairs) - 1)]
            x = 0
            for u in bits(solver.ground_mask(k, q, v)):
                if rng.randint(0, 1):
                    x |= 1 << u
            removed = g.closed_neighborhood(x | (1 << v))
            dec = solver.residual_decompose(k, removed)
            union = 0
            disjoint = True
            for z in dec.roots:
                s = tree.subtree_vertices[z]
                if s & union:
                    disjoint = False
                union |= s
            checks += 1
            done += 1
            if not disjoint or union != tree.subtree_vertices[k] & ~removed:
                failures.append({"seed": seed, "kind": "residual-identity",
                                 "family": "chordal", "node": k,
                                 "cluster": bin(x | (1 << v))})
    gi = small_interval(seed, max_n)
    peo = recognize_chordal(gi)
    cliques = maximal_cliques(gi, peo)
    path = try_clique_path(gi, cliques)
    checks += 1
    if path is None:
        failures.append({"seed": seed, "kind": "interval-no-clique-path",
                         "family": "interval"})
    else:
        iv_value, _, _ = solve_interval(gi, path)
        ch_value, _, _ = ChordalDp(gi, build_clique_tree(gi, cliques)).solve()
        brute_i, _ = BruteOracle(gi).best_subset()
        checks += 1
        if not iv_value == ch_value == brute_i:
            failures.append({"seed": seed, "kind": "interval-vs-chordal-vs-brute",
                             "family": "interval", "interval": iv_value,
                             "chordal": ch_value, "brute": brute_i})
    return {"seed": seed, "checks": checks, "failures": failures}


def supermodular_seed_check(seed: int, max_n: int = 14, mnp_checks: int = 4) -> dict:
    """One supermodular-suite seed: the cluster-pinned objective satisfies
    the supermodular inequality, and min-norm-point agrees with exhaustive
    maximization on harvested inner objectives."""
    checks = 0
    failures: list[dict] = []
    g, tree = small_chordal(seed, min(max_n, 14))
    rng = SplitMix64((seed << 24) ^ 0xFEED)
    clique = tree.cliques[rng.randint(0, len(tree) - 1)]
    members = list(bits(clique))
    while len(members) > 6:
        members.pop(rng.randint(0, len(members) - 1))
    k = 0
    for v in members:
        k |= 1 << v
    ok, witness = check_supermodularity_of_g(g, k)
    checks += 1
    if not ok:
        failures.append({"seed": seed, "kind": "g-not-supermodular", "family": "chordal",
                         "clique": bin(k), "witness": [bin(w) for w in witness]})
        return {"seed": seed, "checks": checks, "failures": failures}
    solver = ChordalDp(g, tree)
    solver.solve()
    done = 0
    for node in tree.postorder:
        if done >= mnp_checks:
            break
        for q, v in solver.cluster_candidates(node):
            if done >= mnp_checks:
                break
            oracle = solver.fv_oracle(node, q, v)
            if len(oracle) > 18:
                continue
            exh = maximize_supermodular(oracle, exhaustive_cap=18)
            neg = SetFunctionOracle(oracle.ground, lambda m: -oracle.eval_mask(m))
            mnp_value = oracle.eval_mask(minimize_submodular_mnp(neg))
            checks += 1
            done += 1
            if mnp_value != exh.value:
                failures.append({"seed": seed, "kind": "mnp-vs-exhaustive",
                                 "family": "chordal", "node": node, "q": q, "v": v,
                                 "mnp": mnp_value, "exhaustive": exh.value})
    return {"seed": seed, "checks": checks, "failures": failures}


def theorem2_seed_check(seed: int, max_n: int = 14) -> dict:
    """One exchange-construction replay on a random clique and a random
    incomparable pair of cluster seeds."""
    checks = 0
    failures: list[dict] = []
    g, tree = small_chordal(seed, max_n)
    rng = SplitMix64((seed << 12) ^ 0xBEEF)
    sized = [m for m in tree.cliques if m.bit_count() >= 2]
    if not sized:
        return {"seed": seed, "checks": 0, "failures": []}
    k = sized[rng.randint(0, len(sized) - 1)]
    members = list(bits(k))
    for _ in range(50):
        a1 = a2 = 0
        for v in members:
            r = rng.randint(0, 3)
            if r & 1:
                a1 |= 1 << v
            if r & 2:
                a2 |= 1 << v
        if a1 & ~a2 and a2 & ~a1:
            break
    else:
        return {"seed": seed, "checks": 0, "failures": []}
    report = check_theorem2_construction(g, k, a1, a2)
    checks += len(report.checks)
    if not report.ok:
        failures.append({"seed": seed, "kind": "exchange-construction", "family": "chordal",
                         "failed": report.failed, "checks": report.checks,
                         "a1": bin(a1), "a2": bin(a2)})
    return {"seed": seed, "checks": checks, "failures": failures}


_SEED_CHECKS = {
    "dp": dp_seed_check,
    "supermodular": supermodular_seed_check,
    "theorem2": theorem2_seed_check,
}


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CVD_THREADS", "1")))
    except ValueError:
        return 1


def _map_seeds(fn, seeds: int, max_n: int) -> list[dict]:
    workers = _worker_count()
    if workers == 1 or seeds < 4:
        return [fn(seed, max_n) for seed in range(seeds)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(seeds), [max_n] * seeds, chunksize=8))


def _dump(result: SuiteResult, failure: dict, out_dir: str) -> None:
    seed = failure["seed"]
    family = failure.get("family", "chordal")
    g = small_chordal(seed)[0] if family == "chordal" else small_interval(seed)
    base = os.path.join(out_dir, f"cvd-counterexample-{result.name}-{seed}")
    with open(base + ".cvd", "w") as fh:
        fh.write(serialize_graph(g))
    with open(base + ".json", "w") as fh:
        json.dump(failure, fh, indent=2, default=str)
    result.artifacts.extend([base + ".cvd", base + ".json"])


def run_suite(name: str, seeds: int, max_n: int = 14, out_dir: str = ".") -> SuiteResult:
    fn = _SEED_CHECKS[name]
    res = SuiteResult(name=name)
    t0 = time.perf_counter()
    for outcome in _map_seeds(fn, seeds, max_n):
        res.runs += 1
        res.checks += outcome["checks"]
        for failure in outcome["failures"]:
            res.failures.append(failure)
            _dump(res, failure, out_dir)
    res.elapsed_s = time.perf_counter() - t0
    return res


def run_selftest(suite: str = "all", seeds: int = 100, max_n: int = 14,
                 out_dir: str = ".") -> dict:
    wanted = SUITES if suite == "all" else (suite,)
    results = [run_suite(name, seeds, max_n, out_dir) for name in wanted]
    return {"schema": "cvd-selftest/1",
            "suites": [r.as_dict() for r in results],
            "ok": all(r.ok for r in results)}
