"""Diagnostics over catalog entries: diameters, Dantzig figures, expansion.

Everything here is exact.  Expansion values are :class:`fractions.Fraction`
and are found by brute force over vertex subsets, so graph size is capped.
Hirsch and d-step violations are reported as findings rather than raised.
"""

from __future__ import annotations

import json
import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .canon import canonical_labeling
from .enumerate import Catalog, CatalogEntry, rebuild_lattice
from .lattice import FaceLattice, PolytopeGraph, graph_of

DEFAULT_CAP = 20


class AnalysisError(ValueError):
    pass


class SizeCapExceeded(AnalysisError):
    pass


# distances

def distances_from(graph: PolytopeGraph, source: int) -> list[int]:
    """BFS distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * graph.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in graph.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def diameter(graph: PolytopeGraph) -> int:
    best = 0
    for v in range(graph.vertex_count):
        dist = distances_from(graph, v)
        if min(dist, default=0) < 0:
            raise AnalysisError("graph is disconnected")
        best = max(best, max(dist))
    return best


@dataclass(frozen=True)
class HirschResult:
    diameter: int
    hirsch_margin: int

    @property
    def violated(self) -> bool:
        return self.hirsch_margin < 0


def hirsch_check(entry: CatalogEntry) -> HirschResult:
    diam = diameter(entry.graph)
    return HirschResult(diam, entry.n - entry.d - diam)


# Dantzig figures

def find_dantzig_pairs(lattice: FaceLattice) -> list[tuple[int, int]] | None:
    """Vertex pairs (lattice ids) lying on no common facet.

    Returns None when the lattice does not have exactly 2d facets.
    """
    if lattice.n_facets != 2 * lattice.d:
        return None
    inc = lattice.vertex_facets
    verts = lattice.vertices
    return [(x, y) for x, y in combinations(verts, 2) if inc[x].isdisjoint(inc[y])]


@dataclass(frozen=True)
class DantzigFigure:
    key: str
    pairs: tuple[tuple[int, int], ...]  # canonical graph indices
    distances: tuple[int, ...]

    @property
    def max_distance(self) -> int:
        return max(self.distances)


@dataclass
class DStepReport:
    d: int
    figures: list[DantzigFigure] = field(default_factory=list)
    entries_scanned: int = 0

    @property
    def violations(self) -> list[DantzigFigure]:
        return [f for f in self.figures if f.max_distance > self.d]

    @property
    def max_distance(self) -> int | None:
        return max((f.max_distance for f in self.figures), default=None)


def _canonical_pairs(lattice: FaceLattice, pairs) -> tuple[PolytopeGraph, list[tuple[int, int]]]:
    g = graph_of(lattice)
    perm = canonical_labeling(g).perm
    pos = {label: perm[i] for i, label in enumerate(g.labels)}
    return g.relabeled(perm), sorted(tuple(sorted((pos[x], pos[y]))) for x, y in pairs)


def dantzig_figure(lattice: FaceLattice) -> DantzigFigure | None:
    pairs = find_dantzig_pairs(lattice)
    if not pairs:
        return None
    g, cpairs = _canonical_pairs(lattice, pairs)
    dist = tuple(distances_from(g, x)[y] for x, y in cpairs)
    return DantzigFigure(canonical_labeling(g).key, tuple(cpairs), dist)


def dstep_scan(catalog: Catalog, d: int | None = None) -> DStepReport:
    """Measure the distinguished-pair distance on every Dantzig figure at n = 2d."""
    d = catalog.d if d is None else d
    report = DStepReport(d)
    for entry in catalog.level(2 * d):
        if entry.d != d:
            continue
        report.entries_scanned += 1
        fig = dantzig_figure(rebuild_lattice(catalog, entry))
        if fig is not None:
            report.figures.append(fig)
    return report


# expansion

@dataclass(frozen=True)
class ExpansionResult:
    value: Fraction
    witness: tuple[int, ...]


def _check_cap(graph: PolytopeGraph, cap: int) -> None:
    n = graph.vertex_count
    if n > cap:
        raise SizeCapExceeded(f"graph has {n} vertices, brute-force cap is {cap}")
    if n < 2:
        raise AnalysisError("expansion needs at least 2 vertices")


def _gray_minimum(graph: PolytopeGraph, cap: int, vertex_mode: bool) -> ExpansionResult:
    _check_cap(graph, cap)
    n = graph.vertex_count
    adj = graph.adjacency
    half = n // 2
    inside = [False] * n
    cnt = [0] * n  # neighbours inside the set
    size = 0
    measure = 0  # boundary edges, or outside neighbours
    best_num, best_den, best_set = None, 1, None
    for i in range(1, 1 << n):
        v = (i & -i).bit_length() - 1
        if not inside[v]:
            inside[v] = True
            size += 1
            if vertex_mode:
                if cnt[v]:
                    measure -= 1
                for w in adj[v]:
                    cnt[w] += 1
                    if cnt[w] == 1 and not inside[w]:
                        measure += 1
            else:
                measure += len(adj[v]) - 2 * cnt[v]
                for w in adj[v]:
                    cnt[w] += 1
        else:
            inside[v] = False
            size -= 1
            if vertex_mode:
                if cnt[v]:
                    measure += 1
                for w in adj[v]:
                    cnt[w] -= 1
                    if cnt[w] == 0 and not inside[w]:
                        measure -= 1
            else:
                for w in adj[v]:
                    cnt[w] -= 1
                measure -= len(adj[v]) - 2 * cnt[v]
        if size > half:
            continue
        if best_num is None or measure * best_den < best_num * size:
            best_num, best_den = measure, size
            best_set = tuple(u for u in range(n) if inside[u])
        elif measure * best_den == best_num * size:
            cand = tuple(u for u in range(n) if inside[u])
            if cand < best_set:
                best_set = cand
    return ExpansionResult(Fraction(best_num, best_den), best_set)


def edge_expansion(graph: PolytopeGraph, cap: int = DEFAULT_CAP) -> ExpansionResult:
    """min |boundary(S)| / |S| over nonempty S with |S| <= |V|/2."""
    return _gray_minimum(graph, cap, vertex_mode=False)


def vertex_expansion(graph: PolytopeGraph, cap: int = DEFAULT_CAP) -> ExpansionResult:
    """min |N(A) \\ A| / |A| over nonempty A with |A| <= |V|/2."""
    return _gray_minimum(graph, cap, vertex_mode=True)


def boundary_size(graph: PolytopeGraph, s: Iterable[int]) -> int:
    s = set(s)
    return sum(1 for v in s for w in graph.adjacency[v] if w not in s)


def outer_neighbourhood(graph: PolytopeGraph, a: Iterable[int]) -> set[int]:
    a = set(a)
    return {w for v in a for w in graph.adjacency[v]} - a


# separators

@dataclass(frozen=True)
class SeparatorReport:
    vertex_count: int
    min_part: int
    separator: tuple[int, ...] | None
    parts: tuple[int, int] | None
    scale: Fraction | None  # |S|^(d-1) / f0^(d-2): the conjectured size order, raised to d-1

    @property
    def found(self) -> bool:
        return self.separator is not None


def _components(adj: Sequence[Sequence[int]], alive: set[int]) -> list[int]:
    sizes = []
    todo = set(alive)
    while todo:
        root = todo.pop()
        stack, k = [root], 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in todo:
                    todo.remove(w)
                    stack.append(w)
                    k += 1
        sizes.append(k)
    return sizes


def _balanced_split(sizes: list[int], min_part: int) -> tuple[int, int] | None:
    """Group components into two sides, each of at least ``min_part`` vertices."""
    if len(sizes) < 2:
        return None
    total = sum(sizes)
    reachable = {0}
    for s in sizes[:-1]:
        reachable |= {r + s for r in reachable}
    # the last component always goes to the second side, so both sides are nonempty
    options = [r for r in reachable if r >= min_part and total - r >= min_part]
    if not options:
        return None
    r = max(options, key=lambda x: (min(x, total - x), x))
    return (max(r, total - r), min(r, total - r))


def kalai_separator_scan(graph: PolytopeGraph, min_part: int | None = None,
                         cap: int = DEFAULT_CAP) -> SeparatorReport:
    """Smallest vertex set whose removal leaves two sides of >= ``min_part`` vertices.

    ``min_part`` defaults to ceil(f0 / 3).  Among separators of the smallest
    size the lexicographically first is reported.
    """
    _check_cap(graph, cap)
    n = graph.vertex_count
    need = math.ceil(n / 3) if min_part is None else min_part
    if need < 1:
        raise AnalysisError("min_part must be positive")
    degrees = {len(r) for r in graph.adjacency}
    d = degrees.pop() if len(degrees) == 1 else None
    everyone = set(range(n))
    for k in range(1, n - 2 * need + 1):
        for sep in combinations(range(n), k):
            split = _balanced_split(_components(graph.adjacency, everyone - set(sep)), need)
            if split is not None:
                scale = Fraction(k ** (d - 1), n ** (d - 2)) if d and d >= 2 else None
                return SeparatorReport(n, need, sep, split, scale)
    return SeparatorReport(n, need, None, None, None)


# records

def _frac(x: Fraction | None) -> str | None:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str | None) -> Fraction | None:
    if text is None:
        return None
    p, q = text.split("/")
    return Fraction(int(p), int(q))


@dataclass(frozen=True)
class AnalysisRecord:
    key: str
    diameter: int
    hirsch_margin: int
    is_dantzig: bool
    dantzig_pair: tuple[int, int] | None
    edge_expansion: Fraction | None
    vertex_expansion: Fraction | None

    def to_record(self) -> dict:
        return {
            "key": self.key,
            "diameter": self.diameter,
            "hirsch_margin": self.hirsch_margin,
            "is_dantzig": self.is_dantzig,
            "dantzig_pair": list(self.dantzig_pair) if self.dantzig_pair else None,
            "edge_expansion": _frac(self.edge_expansion),
            "vertex_expansion": _frac(self.vertex_expansion),
        }

    def to_line(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def from_record(cls, rec: dict) -> AnalysisRecord:
        pair = rec["dantzig_pair"]
        return cls(rec["key"], rec["diameter"], rec["hirsch_margin"], rec["is_dantzig"],
                   tuple(pair) if pair else None, parse_fraction(rec["edge_expansion"]),
                   parse_fraction(rec["vertex_expansion"]))


def analyze_entry(entry: CatalogEntry, lattice: FaceLattice | None = None,
                  expansion_cap: int = DEFAULT_CAP) -> AnalysisRecord:
    """Analyse one entry; ``lattice`` is only consulted when n = 2d."""
    g = entry.graph
    h = hirsch_check(entry)
    pair = None
    if entry.n == 2 * entry.d and lattice is not None:
        fig = dantzig_figure(lattice)
        if fig is not None:
            pair = fig.pairs[0]
    small = g.vertex_count <= expansion_cap
    return AnalysisRecord(
        entry.key, h.diameter, h.hirsch_margin, pair is not None, pair,
        edge_expansion(g, expansion_cap).value if small else None,
        vertex_expansion(g, expansion_cap).value if small else None,
    )


def analyze_catalog(catalog: Catalog, expansion_cap: int = DEFAULT_CAP) -> list[AnalysisRecord]:
    out = []
    for entry in catalog.sorted_entries():
        lattice = rebuild_lattice(catalog, entry) if entry.n == 2 * entry.d else None
        out.append(analyze_entry(entry, lattice, expansion_cap))
    return out


def write_analysis(records: Iterable[AnalysisRecord], path: str | os.PathLike) -> None:
    Path(path).write_text("".join(r.to_line() + "\n" for r in records), encoding="utf-8")


def read_analysis(path: str | os.PathLike) -> list[AnalysisRecord]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [AnalysisRecord.from_record(json.loads(line)) for line in lines if line.strip()]


def summary_table(catalog: Catalog, records: Sequence[AnalysisRecord]) -> str:
    """Per-level table plus highlighted Hirsch and d-step findings."""
    by_key = {r.key: r for r in records}
    rows = [f"{'n':>3} {'types':>6} {'max diam':>8} {'min margin':>10} {'dantzig':>7} "
            f"{'min h(G)':>9} {'min g(G)':>9}"]
    findings = []
    for n in sorted(catalog.counts()):
        recs = [by_key[e.key] for e in catalog.level(n) if e.key in by_key]
        if not recs:
            continue
        hs = [r.edge_expansion for r in recs if r.edge_expansion is not None]
        gs = [r.vertex_expansion for r in recs if r.vertex_expansion is not None]
        rows.append(f"{n:>3} {len(recs):>6} {max(r.diameter for r in recs):>8} "
                    f"{min(r.hirsch_margin for r in recs):>10} "
                    f"{sum(r.is_dantzig for r in recs):>7} "
                    f"{_frac(min(hs)) if hs else '-':>9} {_frac(min(gs)) if gs else '-':>9}")
        for r in recs:
            if r.hirsch_margin < 0:
                findings.append(f"FINDING hirsch: n={n} key={r.key} diameter={r.diameter} "
                                f"exceeds n-d")
    d = catalog.d
    if 2 * d in catalog.counts():
        scan = dstep_scan(catalog)
        for fig in scan.violations:
            findings.append(f"FINDING d-step: key={fig.key} pair distance {fig.max_distance} > {d}")
        rows.append(f"d-step: {len(scan.figures)} Dantzig figures at n={2 * d}, "
                    f"max pair distance {scan.max_distance if scan.figures else '-'}")
    if not findings:
        rows.append("no Hirsch or d-step violations")
    return "\n".join(rows + findings) + "\n"
