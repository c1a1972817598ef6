"""Independent reference for d = 3: 3-connected cubic planar graphs.

Shares nothing with the cutting machinery.  Cubic graphs are generated as
labelled graphs in breadth-first order, filtered for 3-connectivity by
trying every vertex pair as a cut, filtered for planarity (with the
obstruction of every rejected graph checked to be a Kuratowski
subdivision), and reduced to isomorphism classes.  By Steinitz's theorem
these are exactly the graphs of simple 3-polytopes; n facets corresponds to
2n - 4 vertices.
"""

from __future__ import annotations

from collections import defaultdict

import networkx as nx

from .lattice import PolytopeGraph

MAX_FACETS = 9


def cubic_graphs(order: int):
    """Yield connected cubic graphs on ``order`` vertices as edge lists.

    Every isomorphism class appears at least once: each connected cubic
    graph has a breadth-first labelling, and the search below produces all
    breadth-first labellings rooted at vertex 0.
    """
    if order < 4 or order % 2:
        return
    adj: list[list[int]] = [[] for _ in range(order)]

    def place(v: int, used: int):
        # ``used`` = number of vertices already introduced
        if v == order:
            yield [(a, b) for a in range(order) for b in adj[a] if a < b]
            return
        need = 3 - len(adj[v])
        if need == 0:
            yield from place(v + 1, used)
            return
        if v >= used:
            return  # disconnected
        # earlier vertices are saturated, so the remaining neighbours lie above v
        yield from pick(v, need, v + 1, used)

    def pick(v: int, need: int, start: int, used: int):
        if need == 0:
            yield from place(v + 1, used)
            return
        for w in range(start, min(used + 1, order)):
            if len(adj[w]) >= 3 or w in adj[v]:
                continue
            adj[v].append(w)
            adj[w].append(v)
            yield from pick(v, need - 1, w + 1, max(used, w + 1))
            adj[v].pop()
            adj[w].pop()

    yield from place(0, 1)


def is_three_connected(g: nx.Graph) -> bool:
    nodes = list(g)
    if len(nodes) < 4 or not nx.is_connected(g):
        return False
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            h = g.copy()
            h.remove_nodes_from((a, b))
            if not nx.is_connected(h):
                return False
    return True


def _is_kuratowski(h: nx.Graph) -> bool:
    """True if ``h`` is a subdivision of K5 or K3,3."""
    h = nx.Graph(h)
    h.remove_nodes_from([v for v in list(h) if h.degree(v) == 0])
    while True:
        path = [v for v in h if h.degree(v) == 2]
        if not path:
            break
        v = path[0]
        a, b = list(h[v])
        if h.has_edge(a, b):
            return False
        h.remove_node(v)
        h.add_edge(a, b)
    degs = sorted(d for _, d in h.degree())
    if degs == [4] * 5:
        return h.number_of_edges() == 10
    if degs == [3] * 6:
        return nx.is_bipartite(h) and all(len(s) == 3 for s in nx.bipartite.sets(h))
    return False


def is_planar(g: nx.Graph) -> bool:
    planar, certificate = nx.check_planarity(g, counterexample=True)
    if not planar and not _is_kuratowski(certificate):
        raise AssertionError("planarity obstruction is not a Kuratowski subdivision")
    return planar


def _signatures(order: int, edges) -> list[tuple[int, ...]]:
    """Per vertex: how many vertices lie at each distance."""
    nbr: list[list[int]] = [[] for _ in range(order)]
    for a, b in edges:
        nbr[a].append(b)
        nbr[b].append(a)
    out = []
    for r in range(order):
        seen = {r}
        layer = [r]
        sizes = []
        while layer:
            nxt = []
            for v in layer:
                for w in nbr[v]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            sizes.append(len(nxt))
            layer = nxt
        out.append(tuple(sizes))
    return out


def _sorted_introductions(order: int, edges, sig) -> bool:
    """Whether each vertex's newly introduced neighbours appear in signature order.

    Ties in a breadth-first labelling may be broken freely, so every graph
    has a minimal-root labelling passing this test.
    """
    first = [order] * order
    for a, b in edges:
        lo, hi = min(a, b), max(a, b)
        first[hi] = min(first[hi], lo)
    introduced: list[list[int]] = [[] for _ in range(order)]
    for w in range(1, order):
        introduced[first[w]].append(w)
    for kids in introduced:
        for x, y in zip(kids, kids[1:]):
            if sig[x] > sig[y]:
                return False
    return True


def polyhedral_graphs(n_facets: int) -> list[PolytopeGraph]:
    """One representative per isomorphism class of simple 3-polytope graphs with n facets."""
    order = 2 * n_facets - 4
    buckets: dict = defaultdict(list)
    for edges in cubic_graphs(order):
        sig = _signatures(order, edges)
        # some breadth-first labelling is rooted at a minimal vertex, so this loses no class
        if sig[0] != min(sig) or not _sorted_introductions(order, edges, sig):
            continue
        g = nx.Graph(edges)
        inv = tuple(sorted((sig[v], tuple(sorted(sig[w] for w in g[v]))) for v in g))
        if any(nx.vf2pp_is_isomorphic(g, h) for h in buckets[inv]):
            continue
        buckets[inv].append(g)
    return [PolytopeGraph.from_edges(order, g.edges()) for bucket in buckets.values()
            for g in bucket if is_three_connected(g) and is_planar(g)]


def oracle_levels(n_max: int) -> dict[int, list[PolytopeGraph]]:
    if n_max > MAX_FACETS:
        raise ValueError(f"oracle limited to n <= {MAX_FACETS}")
    return {n: polyhedral_graphs(n) for n in range(4, n_max + 1)}
