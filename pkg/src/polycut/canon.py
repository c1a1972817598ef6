"""Canonical labeling, isomorphism and vertex orbits for small graphs.

The labeler refines a vertex coloring to an equitable partition, then
individualizes every vertex of the first non-singleton cell in turn and
recurses.  Each discrete leaf gives a relabeling; the canonical form is the
lexicographically smallest graph6 string over all leaves.  Because the whole
search tree is explored, the leaves sharing the canonical certificate are in
bijection with the automorphism group, which gives the group for free.

Graphs in this package stay small (tens of vertices) and their cells split
quickly under refinement, so exhaustive exploration is affordable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from . import graph6
from .lattice import FaceLattice, PolytopeGraph

CanonicalKey = str


@dataclass(frozen=True)
class OrbitPartition:
    classes: tuple[tuple[int, ...], ...]

    def orbit_of(self, v: int) -> tuple[int, ...]:
        for cls in self.classes:
            if v in cls:
                return cls
        raise KeyError(v)

    def representatives(self) -> list[int]:
        return [cls[0] for cls in self.classes]


@dataclass(frozen=True)
class Labeling:
    key: CanonicalKey
    perm: tuple[int, ...]  # perm[v] = canonical position of vertex v
    automorphisms: tuple[tuple[int, ...], ...]


def _rank(values: Sequence[Hashable]) -> list[int]:
    order = {val: i for i, val in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    cells = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        new = _rank(sig)
        count = max(new, default=-1) + 1
        if count == cells:
            return new
        colors, cells = new, count


def _individualize(colors: list[int], v: int) -> list[int]:
    return _rank([(c, 0 if u == v else 1) for u, c in enumerate(colors)])


def _certificate(adj: Sequence[Sequence[int]], perm: Sequence[int]) -> str:
    n = len(adj)
    rows = [()] * n
    for u in range(n):
        rows[perm[u]] = tuple(perm[w] for w in adj[u])
    return graph6.encode(PolytopeGraph(tuple(tuple(sorted(r)) for r in rows)))


def _leaves(adj: Sequence[Sequence[int]], coloring: Sequence[Hashable]) -> list[list[int]]:
    n = len(adj)
    root = _refine(adj, _rank(list(coloring)))
    leaves = []
    stack = [root]
    while stack:
        colors = stack.pop()
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c, k in counts.items() if k > 1), default=None)
        if target is None:
            leaves.append(colors)
            continue
        members = [v for v in range(n) if colors[v] == target]
        for v in reversed(members):
            stack.append(_refine(adj, _individualize(colors, v)))
    return leaves


def _color_suffix(coloring: Sequence[Hashable] | None) -> str:
    if coloring is None:
        return ""
    counts: dict = {}
    for c in coloring:
        counts[c] = counts.get(c, 0) + 1
    return "|" + ",".join(f"{c!r}x{counts[c]}" for c in sorted(counts))


def canonical_labeling(graph: PolytopeGraph, coloring: Sequence[Hashable] | None = None) -> Labeling:
    adj = graph.adjacency
    n = len(adj)
    if n == 0:
        return Labeling(graph6.encode(graph) + _color_suffix(coloring), (), ((),))
    base = coloring if coloring is not None else [0] * n
    if len(base) != n:
        raise ValueError("coloring length does not match vertex count")
    leaves = _leaves(adj, base)
    certs = [_certificate(adj, leaf) for leaf in leaves]
    best = min(certs)
    best_leaves = [leaf for leaf, cert in zip(leaves, certs) if cert == best]
    first = best_leaves[0]
    inverse = [0] * n
    for v, pos in enumerate(first):
        inverse[pos] = v
    autos = sorted({tuple(inverse[leaf[v]] for v in range(n)) for leaf in best_leaves})
    return Labeling(best + _color_suffix(coloring), tuple(first), tuple(autos))


def canonical_key(graph: PolytopeGraph, coloring: Sequence[Hashable] | None = None) -> CanonicalKey:
    """Relabeling-invariant key; for uncolored graphs it is a graph6 string."""
    return canonical_labeling(graph, coloring).key


def canonical_graph(graph: PolytopeGraph) -> tuple[CanonicalKey, PolytopeGraph]:
    lab = canonical_labeling(graph)
    return lab.key, graph.relabeled(lab.perm)


def are_isomorphic(g1: PolytopeGraph, g2: PolytopeGraph) -> bool:
    if g1.vertex_count != g2.vertex_count or g1.degree_sequence() != g2.degree_sequence():
        return False
    return canonical_key(g1) == canonical_key(g2)


def automorphisms(graph: PolytopeGraph, coloring: Sequence[Hashable] | None = None) -> tuple[tuple[int, ...], ...]:
    """All color-preserving automorphisms as tuples ``g`` with ``g[v]`` the image of ``v``."""
    return canonical_labeling(graph, coloring).automorphisms


def orbits_from_group(n: int, group: Iterable[Sequence[int]]) -> OrbitPartition:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(find(v), []).append(v)
    return OrbitPartition(tuple(sorted(tuple(c) for c in classes.values())))


def vertex_orbits(graph: PolytopeGraph, fixed: Iterable[int] = ()) -> OrbitPartition:
    """Orbits of the automorphisms fixing every vertex of ``fixed`` (graph indices)."""
    fixed = sorted(set(fixed))
    n = graph.vertex_count
    for v in fixed:
        if not 0 <= v < n:
            raise ValueError(f"fixed vertex {v} not in graph")
    coloring = [0] * n
    for i, v in enumerate(fixed):
        coloring[v] = i + 1
    return orbits_from_group(n, automorphisms(graph, coloring))


def lattice_key(lattice: FaceLattice) -> CanonicalKey:
    """Key of the vertex-facet incidence graph, which determines a simple lattice."""
    verts = lattice.vertices
    facets = lattice.facets
    index = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    edges = []
    for j, fid in enumerate(facets):
        for v in lattice.faces[fid].vertices:
            edges.append((index[v], nv + j))
    g = PolytopeGraph.from_edges(nv + len(facets), edges)
    return canonical_key(g, [0] * nv + [1] * len(facets))
