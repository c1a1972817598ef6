"""Face lattices and edge graphs of simple polytopes.

Only proper faces are stored: vertices (dimension 0) up to facets
(dimension d - 1).  Each face points down to its subfaces of one lower
dimension and caches the set of vertex ids it contains.  Vertex ids double as
face ids, so a vertex face ``v`` has ``vertices == {v}``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Mapping


class InvalidDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    id: int
    dim: int
    subfaces: tuple[int, ...]
    vertices: frozenset[int]


@dataclass(frozen=True)
class PolytopeGraph:
    """Edge graph on vertices ``0..n-1``.

    ``labels[i]`` is the lattice vertex id of index ``i`` when the graph was
    extracted from a lattice; it is ``None`` for free-standing graphs.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(n) for n in self.adjacency))

    def index_of(self, label: int) -> int:
        if self.labels is None:
            return label
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict[int, int]:
        return {lab: i for i, lab in enumerate(self.labels or ())}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> PolytopeGraph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_adjacency(cls, adjacency: Iterable[Iterable[int]]) -> PolytopeGraph:
        rows = [sorted(r) for r in adjacency]
        edges = [(u, v) for u, r in enumerate(rows) for v in r]
        return cls.from_edges(len(rows), edges)

    def relabeled(self, perm: list[int] | tuple[int, ...]) -> PolytopeGraph:
        """Graph with vertex ``i`` renamed to ``perm[i]``."""
        n = self.vertex_count
        rows: list[list[int]] = [[] for _ in range(n)]
        for u, nbrs in enumerate(self.adjacency):
            rows[perm[u]] = sorted(perm[v] for v in nbrs)
        return PolytopeGraph(tuple(tuple(r) for r in rows))

    def is_connected(self) -> bool:
        return is_connected(self.adjacency, range(self.vertex_count))


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.split(":", 1)[0] for v in self.violations}


def is_connected(adjacency, nodes: Iterable[int]) -> bool:
    """Whether the subgraph induced on ``nodes`` is connected (empty counts as connected)."""
    nodes = set(nodes)
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(nodes)


class FaceLattice:
    """Proper faces of a simple d-polytope, stratified by dimension.

    Treat instances as immutable: cut operations build new lattices.
    Face ids are never reused, so ``next_id`` only grows along a lineage.
    """

    def __init__(self, d: int, faces: Mapping[int, Face], next_id: int | None = None):
        self.d = d
        self.faces: dict[int, Face] = dict(sorted(faces.items()))
        self.next_id = next_id if next_id is not None else (max(self.faces, default=-1) + 1)

    def __repr__(self) -> str:
        return f"FaceLattice(d={self.d}, f={self.f_vector().counts})"

    @classmethod
    def from_subfaces(cls, d: int, rows: Iterable[tuple[int, int, Iterable[int]]],
                      next_id: int | None = None) -> FaceLattice:
        """Build from ``(dim, id, subface ids)`` rows, deriving vertex sets."""
        rows = sorted((dim, fid, tuple(sorted(subs))) for dim, fid, subs in rows)
        faces: dict[int, Face] = {}
        for dim, fid, subs in rows:
            if dim == 0:
                verts = frozenset((fid,))
            else:
                verts = frozenset().union(*(faces[s].vertices for s in subs if s in faces))
            faces[fid] = Face(fid, dim, subs, verts)
        return cls(d, faces, next_id)

    @cached_property
    def by_dim(self) -> tuple[tuple[int, ...], ...]:
        layers: list[list[int]] = [[] for _ in range(self.d)]
        for f in self.faces.values():
            if 0 <= f.dim < self.d:
                layers[f.dim].append(f.id)
        return tuple(tuple(layer) for layer in layers)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.by_dim[0]

    @property
    def facets(self) -> tuple[int, ...]:
        return self.by_dim[self.d - 1]

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def f_vector(self) -> FVector:
        return FVector(tuple(len(layer) for layer in self.by_dim))

    @cached_property
    def parents(self) -> dict[int, tuple[int, ...]]:
        up: dict[int, list[int]] = {fid: [] for fid in self.faces}
        for f in self.faces.values():
            for s in f.subfaces:
                if s in up:
                    up[s].append(f.id)
        return {k: tuple(v) for k, v in up.items()}

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        """Vertex id -> sorted adjacent vertex ids, read off the 1-faces."""
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        if self.d >= 2:
            for e in self.by_dim[1]:
                verts = self.faces[e].vertices
                if len(verts) == 2:
                    a, b = sorted(verts)
                    nbrs[a].add(b)
                    nbrs[b].add(a)
        return {v: tuple(sorted(s)) for v, s in nbrs.items()}

    @cached_property
    def vertex_facets(self) -> dict[int, frozenset[int]]:
        inc: dict[int, set[int]] = {v: set() for v in self.vertices}
        for fid in self.facets:
            for v in self.faces[fid].vertices:
                if v in inc:
                    inc[v].add(fid)
        return {v: frozenset(s) for v, s in inc.items()}

    def facet_vertex_sets(self) -> list[frozenset[int]]:
        return [self.faces[f].vertices for f in self.facets]

    def faces_of_dim(self, k: int) -> list[Face]:
        return [self.faces[i] for i in self.by_dim[k]]

    def edge_by_endpoints(self) -> dict[frozenset[int], int]:
        return {self.faces[e].vertices: e for e in self.by_dim[1]}

    # serialization

    def to_json(self) -> str:
        rows = sorted((f.dim, f.id, list(f.subfaces)) for f in self.faces.values())
        return json.dumps({"d": self.d, "faces": [list(r) for r in rows]}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> FaceLattice:
        doc = json.loads(text)
        return cls.from_subfaces(doc["d"], ((dim, fid, subs) for dim, fid, subs in doc["faces"]))


def make_simplex(d: int) -> FaceLattice:
    """Face lattice of the d-simplex on vertices ``0..d``."""
    if not isinstance(d, int) or d < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {d!r}")
    ids: dict[tuple[int, ...], int] = {}
    rows = []
    next_id = 0
    for k in range(d):
        for subset in combinations(range(d + 1), k + 1):
            ids[subset] = next_id
            subs = () if k == 0 else tuple(ids[s] for s in combinations(subset, k))
            rows.append((k, next_id, subs))
            next_id += 1
    return FaceLattice.from_subfaces(d, rows, next_id)


def graph_of(lattice: FaceLattice) -> PolytopeGraph:
    """Edge graph of a lattice; graph index i is the i-th smallest vertex id."""
    labels = lattice.vertices
    index = {v: i for i, v in enumerate(labels)}
    nbrs = lattice.neighbors
    adjacency = tuple(tuple(sorted(index[w] for w in nbrs[v])) for v in labels)
    return PolytopeGraph(adjacency, labels)


def f_vector(lattice: FaceLattice) -> FVector:
    return lattice.f_vector()


def validate(lattice: FaceLattice) -> ValidationReport:
    """Check the structural invariants of a simple polytope lattice."""
    d = lattice.d
    report = ValidationReport()
    add = report.violations.append
    faces = lattice.faces

    for f in faces.values():
        if not 0 <= f.dim < d:
            add(f"dimension: face {f.id} has dim {f.dim} outside [0, {d - 1}]")
            continue
        if f.dim == 0:
            if f.subfaces:
                add(f"dimension: vertex {f.id} has subfaces")
            if f.vertices != frozenset((f.id,)):
                add(f"closure: vertex {f.id} vertex set is {sorted(f.vertices)}")
            continue
        union: set[int] = set()
        for s in f.subfaces:
            sub = faces.get(s)
            if sub is None:
                add(f"dimension: face {f.id} points to missing face {s}")
                continue
            if sub.dim != f.dim - 1:
                add(f"dimension: face {f.id} (dim {f.dim}) has subface {s} of dim {sub.dim}")
            union |= sub.vertices
        if union != f.vertices:
            add(f"closure: face {f.id} caches {sorted(f.vertices)} but subfaces cover {sorted(union)}")
        if f.dim >= 1 and len(f.subfaces) < f.dim + 1:
            add(f"closure: {f.dim}-face {f.id} has only {len(f.subfaces)} subfaces")
        if f.dim >= 2:
            # diamond property: inside f, every (dim-2)-face lies on exactly two subfaces
            seen: dict[int, int] = {}
            for s in f.subfaces:
                for g in faces[s].subfaces if s in faces else ():
                    seen[g] = seen.get(g, 0) + 1
            odd = sorted(g for g, k in seen.items() if k != 2)
            if odd:
                add(f"closure: face {f.id} is not closed around subfaces {odd[:5]}")

    if d >= 2:
        for e in lattice.by_dim[1]:
            if len(faces[e].vertices) != 2:
                add(f"regularity: edge {e} has {len(faces[e].vertices)} vertices")

    nbrs = lattice.neighbors
    for v in lattice.vertices:
        if len(nbrs[v]) != d:
            add(f"regularity: vertex {v} has {len(nbrs[v])} neighbors, expected {d}")
        if len(lattice.vertex_facets[v]) != d:
            add(f"incidence: vertex {v} lies in {len(lattice.vertex_facets[v])} facets, expected {d}")

    # each ridge lies in exactly two facets (diamond property at the top)
    if d >= 2:
        up = lattice.parents
        for r in lattice.by_dim[d - 2]:
            k = sum(1 for p in up[r] if faces[p].dim == d - 1)
            if k != 2:
                add(f"incidence: ridge {r} lies in {k} facets")

    f = lattice.f_vector().counts
    euler = sum((-1) ** k * c for k, c in enumerate(f))
    if euler != 1 - (-1) ** d:
        add(f"euler: alternating sum {euler} != {1 - (-1) ** d}")

    if not is_connected(nbrs, lattice.vertices):
        add("connectivity: edge graph is disconnected")
    return report


def simplex_f_vector(d: int) -> tuple[int, ...]:
    return tuple(comb(d + 1, k + 1) for k in range(d))
