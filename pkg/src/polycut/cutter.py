"""Truncating vertex sets off a simple polytope, on the lattice and on the graph.

Every face containing a removed vertex is marked together with all of its
ancestors.  Marked faces lying entirely inside the cut region disappear.
Every other marked k-face f survives, and the hyperplane slices it in a new
(k-1)-face whose subfaces are the slices of f's marked subfaces.  Slices of
edges are the new vertices, and the slice of the whole polytope is the new
facet.  Two slices share a face exactly when their parents did one
dimension up, so this reconstruction is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cutsets import Cutset, CutsetValidity, is_valid_cutset
from .lattice import FaceLattice, PolytopeGraph, graph_of, validate


class CutError(ValueError):
    pass


@dataclass(frozen=True)
class CutResult:
    child: FaceLattice
    new_facet_id: int
    new_vertex_ids: tuple[int, ...]
    removed_vertex_ids: tuple[int, ...]
    parent_edge_of: dict[int, int]
    face_visits: int


def _reject(what: str, check: CutsetValidity) -> CutError:
    flags = {k: getattr(check, k) for k in
             ("connected", "complement_connected", "facet_free", "face_connected")}
    bad = sorted(k for k, ok in flags.items() if not ok)
    return CutError(f"{what} rejected: fails {', '.join(bad)}")


def _truncate(lattice: FaceLattice, removed: frozenset[int], *, facet_id: int | None = None,
              reuse: dict[int, int] | None = None):
    faces = lattice.faces
    up = lattice.parents
    d = lattice.d

    marked = set(removed)
    stack = list(removed)
    while stack:
        for p in up[stack.pop()]:
            if p not in marked:
                marked.add(p)
                stack.append(p)
    inside = {f for f in marked if faces[f].vertices <= removed}
    touched = marked - inside
    by_dim: list[list[int]] = [[] for _ in range(d)]
    for f in sorted(touched):
        by_dim[faces[f].dim].append(f)

    next_id = lattice.next_id
    derived: dict[int, int] = {}
    parent_edge_of: dict[int, int] = {}
    for e in by_dim[1]:
        if reuse and e in reuse:
            derived[e] = reuse[e]
        else:
            derived[e] = next_id
            next_id += 1
        parent_edge_of[derived[e]] = e
    if facet_id is None:
        facet_id = next_id
        next_id += 1
    for k in range(d - 1, 1, -1):
        for f in by_dim[k]:
            derived[f] = next_id
            next_id += 1

    rows: list[tuple[int, int, Sequence[int]]] = []
    for f in faces.values():
        if f.id in inside:
            continue
        if f.id in touched:
            subs = [g for g in f.subfaces if g not in inside]
            subs.append(derived[f.id])
            rows.append((f.dim, f.id, subs))
        else:
            rows.append((f.dim, f.id, f.subfaces))
    for e in by_dim[1]:
        rows.append((0, derived[e], ()))

    visits = len(lattice.facets)
    rows.append((d - 1, facet_id, [derived[f] for f in lattice.facets if f in touched]))
    for k in range(d - 1, 1, -1):
        for f in by_dim[k]:
            subs = faces[f].subfaces
            visits += len(subs)
            rows.append((k - 1, derived[f], [derived[g] for g in subs if g in touched]))

    child = FaceLattice.from_subfaces(d, rows, next_id)
    return child, facet_id, parent_edge_of, visits


def child_vertex_count(lattice: FaceLattice, removed: Iterable[int]) -> int:
    """Surviving old vertices plus one new vertex per boundary edge."""
    c = set(removed)
    nbrs = lattice.neighbors
    boundary = sum(1 for v in c for w in nbrs[v] if w not in c)
    return len(lattice.vertices) - len(c) + boundary


def work_bound(lattice: FaceLattice) -> int:
    """Sum over k of f_k * f_{k+2}, counting the polytope itself as f_d = 1."""
    f = list(lattice.f_vector().counts) + [1]
    return sum(f[k] * f[k + 2] for k in range(len(f) - 2))


def cut_polytope(lattice: FaceLattice, cutset: Cutset | Iterable[int], *,
                 enforce_face_condition: bool = True, check: bool = True) -> CutResult:
    c = frozenset(cutset.vertices if isinstance(cutset, Cutset) else cutset)
    validity = is_valid_cutset(lattice, c, enforce_face_condition=enforce_face_condition)
    if not validity.valid:
        raise _reject("cutset", validity)
    if child_vertex_count(lattice, c) < lattice.d + 1:
        raise CutError(f"cut would leave fewer than {lattice.d + 1} vertices")
    child, facet_id, parent_edge_of, visits = _truncate(lattice, c)
    if check:
        report = validate(child)
        if report.violations:
            raise CutError("cut produced an invalid lattice: " + "; ".join(report.violations[:3]))
    return CutResult(child, facet_id, tuple(sorted(parent_edge_of)), tuple(sorted(c)),
                     parent_edge_of, visits)


def push_facet(lattice: FaceLattice, facet: int, vertex: int, *,
               enforce_face_condition: bool = True, check: bool = True) -> CutResult:
    """Translate the hyperplane of ``facet`` until it also cuts off ``vertex``.

    The facet keeps its id.  Facet vertices adjacent to ``vertex`` vanish;
    the other facet vertices slide along their outgoing edge and keep their
    ids; ``new_vertex_ids`` are the vertices created on the edges from
    ``vertex`` to vertices off the facet.
    """
    if facet not in lattice.faces or lattice.faces[facet].dim != lattice.d - 1:
        raise CutError(f"{facet} is not a facet")
    if vertex not in lattice.faces or lattice.faces[vertex].dim != 0:
        raise CutError(f"{vertex} is not a vertex")
    fverts = lattice.faces[facet].vertices
    nbrs = lattice.neighbors
    if vertex in fverts or not any(w in fverts for w in nbrs[vertex]):
        raise CutError("input error: vertex is not adjacent to the facet")
    removed = fverts | {vertex}
    validity = is_valid_cutset(lattice, removed, enforce_face_condition=enforce_face_condition,
                               allowed_facets=[facet])
    if not validity.valid:
        raise _reject("push", validity)

    edge_of = lattice.edge_by_endpoints()
    reuse: dict[int, int] = {}
    for u in fverts:
        if vertex in nbrs[u]:
            continue
        (w,) = [x for x in nbrs[u] if x not in removed]
        reuse[edge_of[frozenset((u, w))]] = u
    child, _, parent_edge_of, visits = _truncate(lattice, frozenset(removed), facet_id=facet,
                                                 reuse=reuse)
    if check:
        report = validate(child)
        if report.violations:
            raise CutError("push produced an invalid lattice: " + "; ".join(report.violations[:3]))
    slid = set(reuse.values())
    new_vertices = tuple(sorted(v for v in parent_edge_of if v not in slid))
    gone = tuple(sorted({vertex} | {u for u in fverts if vertex in nbrs[u]}))
    return CutResult(child, facet, new_vertices, gone,
                     {v: parent_edge_of[v] for v in new_vertices}, visits)


def two_faces_of(lattice: FaceLattice) -> list[frozenset[int]]:
    """Vertex sets of the 2-faces (the polygon itself when d = 2)."""
    if lattice.d == 2:
        return [frozenset(lattice.vertices)]
    return [lattice.faces[f].vertices for f in lattice.by_dim[2]]


def cut_graph_only(graph: PolytopeGraph, two_faces: Iterable[Iterable[int]] | None,
                   cutset: Cutset | Iterable[int]) -> PolytopeGraph:
    """Child graph from local updates: new vertices on boundary edges, joined
    when their parent edges share a 2-face.

    Vertices are named by ``graph.labels`` (indices when absent).  New vertices
    get labels above the largest old label, in sorted boundary-edge order.
    """
    if not two_faces:
        raise CutError("missing 2-face data")
    faces = [frozenset(f) for f in two_faces]
    n = graph.vertex_count
    labels = graph.labels if graph.labels is not None else tuple(range(n))
    nbr = {labels[i]: {labels[j] for j in graph.adjacency[i]} for i in range(n)}
    c = set(cutset.vertices if isinstance(cutset, Cutset) else cutset)
    if not c <= nbr.keys():
        raise CutError(f"unknown vertices {sorted(c - nbr.keys())}")

    boundary = sorted((a, b) for a in c for b in nbr[a] if b not in c)
    start = max(labels) + 1
    new_label = {e: start + i for i, e in enumerate(boundary)}
    edges: set[tuple[int, int]] = set()
    for a in nbr:
        if a in c:
            continue
        for b in nbr[a]:
            if b not in c and a < b:
                edges.add((a, b))
    for (a, b), x in new_label.items():
        edges.add((b, x))
    covered = set()
    for f in faces:
        inner = [new_label[e] for e in boundary if e[0] in f and e[1] in f]
        covered.update(inner)
        for i in range(len(inner)):
            for j in range(i + 1, len(inner)):
                edges.add((inner[i], inner[j]))
    if len(covered) < len(boundary) and len(boundary) > 1:
        raise CutError("missing 2-face data for some boundary edges")

    verts = sorted({x for x in nbr if x not in c} | set(new_label.values()))
    index = {x: i for i, x in enumerate(verts)}
    g = PolytopeGraph.from_edges(len(verts), [(index[a], index[b]) for a, b in edges])
    return PolytopeGraph(g.adjacency, tuple(verts))


def facet_graph(lattice: FaceLattice, facet: int) -> PolytopeGraph:
    """Graph of one facet: the lattice edges with both ends on it."""
    verts = sorted(lattice.faces[facet].vertices)
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for e in lattice.by_dim[1]:
        a, b = sorted(lattice.faces[e].vertices)
        if a in index and b in index:
            edges.append((index[a], index[b]))
    g = PolytopeGraph.from_edges(len(verts), edges)
    return PolytopeGraph(g.adjacency, tuple(verts))


def graph_only_sweep(lattice: FaceLattice, order: Sequence[int]) -> list[bool]:
    """Compare the graph-only update against the lattice path along a sweep.

    Step 1 cuts ``order[0]``; each later step pushes the new facet onto the
    next vertex.  The graph-only update at each step uses the 2-faces of the
    current lattice and the cutset ``{v} + facet``.  Returns, per step,
    whether the graph-only result is isomorphic to the lattice result.
    """
    from .canon import are_isomorphic

    agree = []
    current = lattice
    facet = None
    for i, v in enumerate(order):
        if i == 0:
            res = cut_polytope(current, [v])
            fast = cut_graph_only(graph_of(current), two_faces_of(current), [v])
        else:
            region = current.faces[facet].vertices | {v}
            res = push_facet(current, facet, v)
            fast = cut_graph_only(graph_of(current), two_faces_of(current), region)
        agree.append(are_isomorphic(fast, graph_of(res.child)))
        current, facet = res.child, res.new_facet_id
    return agree
