"""Graph files and result reports.

Graph format (DIMACS-flavored, ids 1-based in files, 0-based in memory):

    c free-form comment
    p cvd <n> <m> <scale>
    v <id> <decimal-weight>
    e <u> <v>

``scale`` is a power-of-ten denominator: weights are decimals that must be
exact multiples of 1/scale and are stored internally as scaled nonnegative
integers, so no floating point crosses this boundary. Missing ``v`` lines
default to weight 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import WeightedGraph, bits

RESULT_SCHEMA = "cvd-result/1"


class GraphFormatError(ValueError):
    pass


def parse_graph(text: str) -> tuple[WeightedGraph, int]:
    n = m = scale = -1
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "p":
                if n >= 0:
                    raise GraphFormatError("duplicate problem line")
                if len(parts) != 5 or parts[1] != "cvd":
                    raise GraphFormatError("problem line must be 'p cvd <n> <m> <scale>'")
                n, m, scale = int(parts[2]), int(parts[3]), int(parts[4])
                if n < 0 or m < 0:
                    raise GraphFormatError("negative n or m")
                s = str(scale)
                if scale < 1 or s[0] != "1" or set(s[1:]) - {"0"}:
                    raise GraphFormatError(f"scale must be a power of ten, got {scale}")
            elif kind == "v":
                if n < 0:
                    raise GraphFormatError("vertex line before problem line")
                if len(parts) != 3:
                    raise GraphFormatError("vertex line must be 'v <id> <weight>'")
                vid = int(parts[1])
                if not 1 <= vid <= n:
                    raise GraphFormatError(f"vertex id {vid} out of range 1..{n}")
                if vid - 1 in weights:
                    raise GraphFormatError(f"duplicate weight for vertex {vid}")
                try:
                    frac = Fraction(parts[2])
                except ValueError:
                    raise GraphFormatError(f"unparseable weight {parts[2]!r}") from None
                scaled = frac * scale
                if scaled.denominator != 1:
                    raise GraphFormatError(
                        f"weight {parts[2]} is not a multiple of 1/{scale}")
                if scaled < 0:
                    raise GraphFormatError(f"negative weight {parts[2]}")
                weights[vid - 1] = int(scaled)
            elif kind == "e":
                if n < 0:
                    raise GraphFormatError("edge line before problem line")
                if len(parts) != 3:
                    raise GraphFormatError("edge line must be 'e <u> <v>'")
                u, v = int(parts[1]), int(parts[2])
                if not (1 <= u <= n and 1 <= v <= n):
                    raise GraphFormatError(f"edge ({u},{v}) out of range")
                if u == v:
                    raise GraphFormatError(f"self-loop at {u}")
                key = (min(u, v) - 1, max(u, v) - 1)
                if key in seen_edges:
                    raise GraphFormatError(f"duplicate edge ({u},{v})")
                seen_edges.add(key)
                edges.append(key)
            else:
                raise GraphFormatError(f"unknown line kind {kind!r}")
        except GraphFormatError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    if n < 0:
        raise GraphFormatError("missing problem line")
    if len(edges) != m:
        raise GraphFormatError(f"edge count mismatch: header says {m}, body has {len(edges)}")
    wlist = [weights.get(v, scale) for v in range(n)]
    return WeightedGraph(n, edges, wlist), scale


def format_weight(scaled: int, scale: int) -> str:
    if scale == 1:
        return str(scaled)
    digits = len(str(scale)) - 1
    return f"{scaled // scale}.{scaled % scale:0{digits}d}"


def serialize_graph(g: WeightedGraph, scale: int = 1, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cvd {g.n} {g.edge_count()} {scale}")
    for v in range(g.n):
        lines.append(f"v {v + 1} {format_weight(g.weights[v], scale)}")
    for u, v in g.edges():
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


@dataclass
class ResultReport:
    """Solver output; all weights are scaled integers plus the scale."""

    psi: int
    deletion_weight: int
    clusters: list[list[int]]           # 1-based vertex ids
    deleted: list[int]                  # 1-based vertex ids
    algorithm: str
    scale: int = 1
    n: int = 0
    timings_ms: dict = field(default_factory=dict)
    schema: str = RESULT_SCHEMA

    def to_json(self) -> str:
        return json.dumps({
            "schema": self.schema,
            "algorithm": self.algorithm,
            "n": self.n,
            "scale": self.scale,
            "psi": self.psi,
            "deletion_weight": self.deletion_weight,
            "clusters": self.clusters,
            "deleted": self.deleted,
            "timings_ms": self.timings_ms,
        }, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultReport":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"malformed result JSON: {exc}") from None
        if not isinstance(obj, dict) or obj.get("schema") != RESULT_SCHEMA:
            raise GraphFormatError(f"expected schema {RESULT_SCHEMA}")
        try:
            return cls(psi=obj["psi"], deletion_weight=obj["deletion_weight"],
                       clusters=obj["clusters"], deleted=obj["deleted"],
                       algorithm=obj.get("algorithm", "?"), scale=obj.get("scale", 1),
                       n=obj.get("n", 0), timings_ms=obj.get("timings_ms", {}))
        except KeyError as exc:
            raise GraphFormatError(f"missing result field {exc}") from None


def report_from_solution(g: WeightedGraph, solution_vertices: int, clusters: tuple[int, ...],
                         algorithm: str, scale: int, timings_ms: dict) -> ResultReport:
    cluster_ids = [sorted(v + 1 for v in bits(c)) for c in clusters]
    cluster_ids.sort()
    deleted = sorted(v + 1 for v in bits(g.full_mask & ~solution_vertices))
    psi = g.weight_of(solution_vertices)
    return ResultReport(psi=psi, deletion_weight=g.total_weight() - psi,
                        clusters=cluster_ids, deleted=deleted, algorithm=algorithm,
                        scale=scale, n=g.n, timings_ms=timings_ms)


def check_report(g: WeightedGraph, report: ResultReport) -> tuple[bool, str | None]:
    """Validate a report against its graph; names the first violation."""
    from .solution import ClusterSolution, validate_solution

    if report.n and report.n != g.n:
        return False, "vertex count mismatch"
    seen = 0
    clusters = []
    for ids in report.clusters:
        c = 0
        for i in ids:
            if not 1 <= i <= g.n:
                return False, f"vertex id {i} out of range"
            c |= 1 << (i - 1)
        clusters.append(c)
    for i in report.deleted:
        if not 1 <= i <= g.n:
            return False, f"vertex id {i} out of range"
        seen |= 1 << (i - 1)
    vertices = 0
    for c in clusters:
        if c & vertices or c & seen:
            return False, "clusters and deleted set do not partition the vertices"
        vertices |= c
    if vertices | seen != g.full_mask:
        return False, "clusters and deleted set do not cover the vertices"
    sol = ClusterSolution(vertices=vertices, clusters=tuple(clusters),
                          weight=g.weight_of(vertices))
    ok, why = validate_solution(g, sol)
    if not ok:
        return False, why
    if report.psi != sol.weight:
        return False, "psi does not match the solution weight"
    if report.psi + report.deletion_weight != g.total_weight():
        return False, "psi + deletion_weight != total weight"
    return True, None
