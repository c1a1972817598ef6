"""Candidate cutsets: vertex sets a single hyperplane could slice off.

A cutset C is kept when

1. the subgraph induced on C is connected,
2. removing C leaves the graph connected,
3. C contains no facet, and
4. (optional, on by default) no face of dimension >= 2 has its surviving
   vertices split into several pieces.

These conditions are necessary for realizability in every dimension and
sufficient in dimension 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .canon import automorphisms, orbits_from_group
from .lattice import FaceLattice, graph_of, is_connected


class CutsetError(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Cutset:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices


@dataclass(frozen=True)
class CutsetValidity:
    connected: bool
    complement_connected: bool
    facet_free: bool
    face_connected: bool
    enforce_face_condition: bool = True

    @property
    def valid(self) -> bool:
        ok = self.connected and self.complement_connected and self.facet_free
        if self.enforce_face_condition:
            ok = ok and self.face_connected
        return ok


def _as_set(cutset: Cutset | Iterable[int]) -> frozenset[int]:
    return frozenset(cutset.vertices if isinstance(cutset, Cutset) else cutset)


def is_valid_cutset(lattice: FaceLattice, cutset: Cutset | Iterable[int], *,
                    enforce_face_condition: bool = True,
                    allowed_facets: Iterable[int] = ()) -> CutsetValidity:
    """Evaluate the cutset conditions; ``allowed_facets`` may lie inside C."""
    c = _as_set(cutset)
    verts = set(lattice.vertices)
    unknown = c - verts
    if unknown:
        raise CutsetError(f"unknown vertex ids {sorted(unknown)}")
    if not c:
        raise CutsetError("empty cutset")
    if c == verts:
        raise CutsetError("cutset contains every vertex; complement is empty")

    nbrs = lattice.neighbors
    rest = verts - c
    connected = is_connected(nbrs, c)
    complement_connected = is_connected(nbrs, rest)
    allowed = set(allowed_facets)
    facet_free = not any(
        lattice.faces[f].vertices <= c for f in lattice.facets if f not in allowed
    )
    face_connected = True
    for k in range(2, lattice.d):
        for fid in lattice.by_dim[k]:
            fverts = lattice.faces[fid].vertices
            if fverts.isdisjoint(c):
                continue
            residual = fverts - c
            if residual and not is_connected(nbrs, residual):
                face_connected = False
                break
        if not face_connected:
            break
    return CutsetValidity(connected, complement_connected, facet_free, face_connected,
                          enforce_face_condition)


def enumerate_cutsets(lattice: FaceLattice, *, enforce_face_condition: bool = True,
                      max_size: int | None = None, strict_growth: bool = False) -> list[Cutset]:
    """One representative per automorphism class of valid cutsets.

    Sets are grown from orbit representatives of single vertices by adding
    one neighbor at a time, trying only one neighbor per orbit of the
    automorphisms that fix the current set pointwise.  Growth continues
    through connected sets that fail conditions 2 or 4, since those
    conditions are not inherited by subsets; a set containing a facet is a
    dead end because every superset contains it too.  ``strict_growth``
    restricts growth to valid sets only.

    Representatives are the lexicographically smallest image of the set
    under the automorphism group.  A valid cutset larger than ``max_size``
    raises :class:`CapExceeded`.
    """
    graph = graph_of(lattice)
    labels = graph.labels
    adj = graph.adjacency
    n = graph.vertex_count
    group = automorphisms(graph)
    facet_masks = []
    for fvs in lattice.facet_vertex_sets():
        m = 0
        for v in fvs:
            m |= 1 << graph.index_of(v)
        facet_masks.append(m)

    def rep(members: tuple[int, ...]) -> tuple[int, ...]:
        return min(tuple(sorted(g[v] for v in members)) for g in group)

    seen: set[tuple[int, ...]] = set()
    found: list[tuple[int, ...]] = []
    seeds = orbits_from_group(n, group).representatives()
    stack: list[tuple[int, ...]] = [(s,) for s in reversed(seeds)]
    while stack:
        members = stack.pop()
        r = rep(members)
        if r in seen:
            continue
        seen.add(r)
        mask = 0
        for v in members:
            mask |= 1 << v
        if any(fm & mask == fm for fm in facet_masks):
            continue
        check = is_valid_cutset(lattice, [labels[v] for v in members],
                                enforce_face_condition=enforce_face_condition)
        if check.valid:
            if max_size is not None and len(members) > max_size:
                raise CapExceeded(
                    f"valid cutset of size {len(members)} exceeds max cutset size {max_size}")
            found.append(r)
        elif strict_growth or not check.connected:
            continue
        if len(members) >= n - 1:
            continue
        inside = set(members)
        frontier = sorted({w for v in members for w in adj[v]} - inside)
        stab = [g for g in group if all(g[v] == v for v in members)]
        # the stabilizer maps the frontier onto itself, so orbit minima lie in it
        orbit = orbits_from_group(n, stab)
        reps = sorted({orbit.orbit_of(w)[0] for w in frontier})
        for w in reversed(reps):
            stack.append(tuple(sorted(inside | {w})))
    found.sort(key=lambda t: (len(t), t))
    return [Cutset(tuple(labels[v] for v in t)) for t in found]


def boundary_edge_count(lattice: FaceLattice, cutset: Cutset | Iterable[int]) -> int:
    c = _as_set(cutset)
    nbrs = lattice.neighbors
    return sum(1 for v in c for w in nbrs[v] if w not in c)
