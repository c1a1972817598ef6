import pytest

from polycut.canon import are_isomorphic, lattice_key
from polycut.cutsets import boundary_edge_count, enumerate_cutsets
from polycut.cutter import (
    CutError,
    cut_graph_only,
    cut_polytope,
    facet_graph,
    graph_only_sweep,
    push_facet,
    two_faces_of,
    work_bound,
)
from polycut.enumerate import EnumerationConfig, enumerate_all
from polycut.families import complete_graph, simplex_prism_graph
from polycut.lattice import graph_of, make_simplex, validate


def catalog_lattices(d, n):
    cat = enumerate_all(d, n, EnumerationConfig(retain_lattices=True))
    return [cat.lattices[e.key] for e in cat.sorted_entries()]


D3 = catalog_lattices(3, 7)
D4 = catalog_lattices(4, 7)


def test_single_vertex_cut_of_tetrahedron(tetra):
    res = cut_polytope(tetra, [0])
    assert res.child.f_vector().counts == (6, 9, 5)
    assert len(res.child.faces[res.new_facet_id].vertices) == 3
    assert are_isomorphic(graph_of(res.child), simplex_prism_graph(3))
    assert res.removed_vertex_ids == (0,)


def test_edge_cut_of_tetrahedron(tetra):
    res = cut_polytope(tetra, [0, 1])
    assert res.child.f_vector().counts == (6, 9, 5)
    facet = res.child.faces[res.new_facet_id]
    assert len(facet.vertices) == 4
    assert are_isomorphic(facet_graph(res.child, res.new_facet_id), simplex_prism_graph(2))
    assert are_isomorphic(graph_of(res.child), simplex_prism_graph(3))


def test_four_simplex_vertex_cut():
    res = cut_polytope(make_simplex(4), [0])
    assert are_isomorphic(facet_graph(res.child, res.new_facet_id), complete_graph(4))


def test_invalid_cutset_rejected(tetra, cube):
    with pytest.raises(CutError, match="facet_free"):
        cut_polytope(tetra, [0, 1, 2])
    with pytest.raises(CutError, match="connected"):
        cut_polytope(cube, [0, 7])


def test_polygon_vertex_cut():
    res = cut_polytope(make_simplex(2), [0])
    assert res.child.f_vector().counts == (4, 4)


@pytest.mark.parametrize("L", D3 + D4, ids=lambda L: repr(L))
def test_cut_invariants(L):
    d = L.d
    for cs in enumerate_cutsets(L):
        res = cut_polytope(L, cs, check=False)
        child = res.child
        assert child.n_facets == L.n_facets + 1
        assert len(res.new_vertex_ids) == boundary_edge_count(L, cs)
        assert child.faces[res.new_facet_id].vertices == frozenset(res.new_vertex_ids)
        assert set(res.parent_edge_of) == set(res.new_vertex_ids)
        for v, e in res.parent_edge_of.items():
            a, b = L.faces[e].vertices
            assert (a in cs) != (b in cs)
        assert res.face_visits <= work_bound(L)
        # faces missing the cut region survive untouched
        for f in L.faces.values():
            if f.vertices.isdisjoint(cs.vertices):
                assert child.faces[f.id] == f
        assert not (set(child.faces) & set(cs.vertices))
        if validate(child).violations:
            # formal cut of a set no hyperplane realises; the checked entry point refuses it
            assert d >= 4
            with pytest.raises(CutError, match="invalid lattice"):
                cut_polytope(L, cs)
            continue
        fg = facet_graph(child, res.new_facet_id)
        if len(cs) == 1:
            assert are_isomorphic(fg, complete_graph(d))
        if len(cs) == 2:
            assert fg.vertex_count == 2 * d - 2
            assert are_isomorphic(fg, simplex_prism_graph(d - 1))


def test_push_matches_direct_cut(tetra):
    first = cut_polytope(tetra, [0])
    pushed = push_facet(first.child, first.new_facet_id, 1)
    direct = cut_polytope(tetra, [0, 1])
    assert lattice_key(pushed.child) == lattice_key(direct.child)
    assert pushed.child.n_facets == first.child.n_facets
    assert pushed.child.faces[first.new_facet_id].dim == 2
    assert not validate(pushed.child).violations


def test_push_creates_vertices_only_off_the_facet(tetra):
    first = cut_polytope(tetra, [0])
    res = push_facet(first.child, first.new_facet_id, 1)
    off = [w for w in first.child.neighbors[1]
           if w not in first.child.faces[first.new_facet_id].vertices]
    assert len(res.new_vertex_ids) == len(off)
    for v in res.new_vertex_ids:
        assert 1 in first.child.faces[res.parent_edge_of[v]].vertices


def test_push_errors(tetra, cube):
    first = cut_polytope(tetra, [0])
    with pytest.raises(CutError, match="input error"):
        # vertex on the facet itself is not a valid push target
        push_facet(first.child, first.new_facet_id, next(iter(first.child.faces[first.new_facet_id].vertices)))
    res = cut_polytope(cube, [0])
    far = 7  # antipode of the cut corner: no neighbour on the new triangle
    with pytest.raises(CutError, match="input error"):
        push_facet(res.child, res.new_facet_id, far)
    with pytest.raises(CutError, match="not a facet"):
        push_facet(res.child, 1, 2)


def test_push_rejects_swallowing_a_facet(prism):
    res = cut_polytope(prism, [0])
    step = push_facet(res.child, res.new_facet_id, 1)
    with pytest.raises(CutError, match="facet_free"):
        push_facet(step.child, res.new_facet_id, 2)  # {0, 1, 2} is a triangle of the prism


def _growth_orders(L, members):
    members = set(members)
    nbrs = L.neighbors
    out = []

    def extend(path):
        if len(path) == len(members):
            out.append(tuple(path))
            return
        for v in sorted(members - set(path)):
            if not path or any(w in path for w in nbrs[v]):
                extend(path + [v])

    extend([])
    return out


def sweep_violations(L, max_size=3):
    bad = []
    checked = 0
    for cs in enumerate_cutsets(L):
        if len(cs) > max_size:
            continue
        target = lattice_key(cut_polytope(L, cs).child)
        for order in _growth_orders(L, cs):
            res = cut_polytope(L, [order[0]])
            lat, facet = res.child, res.new_facet_id
            ok = True
            try:
                for v in order[1:]:
                    lat = push_facet(lat, facet, v).child
            except CutError:
                ok = False
            checked += 1
            if not ok or lattice_key(lat) != target:
                bad.append((cs.vertices, order))
    return bad, checked


def test_sweep_equivalence_tetrahedron(tetra):
    bad, checked = sweep_violations(tetra)
    assert checked > 0 and not bad


def test_sweep_equivalence_prism(prism):
    bad, checked = sweep_violations(prism)
    assert checked > 0 and not bad


def test_graph_only_single_vertex(tetra):
    g = cut_graph_only(graph_of(tetra), two_faces_of(tetra), [0])
    assert are_isomorphic(g, simplex_prism_graph(3))


@pytest.mark.parametrize("L", D3 + D4, ids=lambda L: repr(L))
def test_graph_only_matches_lattice(L):
    for cs in enumerate_cutsets(L):
        fast = cut_graph_only(graph_of(L), two_faces_of(L), cs)
        child = cut_polytope(L, cs, check=False).child
        if validate(child).violations:
            continue
        assert are_isomorphic(fast, graph_of(child))
        if len(cs) == 1:
            new = [i for i, lab in enumerate(fast.labels) if lab >= max(L.vertices) + 1]
            sub = {i: [w for w in fast.adjacency[i] if w in new] for i in new}
            assert all(len(r) == L.d - 1 for r in sub.values())


def test_graph_only_missing_faces(tetra):
    with pytest.raises(CutError, match="2-face"):
        cut_graph_only(graph_of(tetra), None, [0])


def test_graph_only_sweep(prism):
    # 0-1 is a triangle edge and 1-4 a rung, so {0, 1, 4} is a valid path cutset
    assert graph_only_sweep(prism, [0, 1, 4]) == [True, True, True]
    assert graph_only_sweep(prism, [0]) == [True]
