"""Directly constructed graphs of familiar simple polytopes."""

from __future__ import annotations

from itertools import combinations

from .lattice import FaceLattice, PolytopeGraph, make_simplex
from .cutter import cut_polytope


def complete_graph(k: int) -> PolytopeGraph:
    return PolytopeGraph.from_edges(k, combinations(range(k), 2))


def hypercube_graph(d: int) -> PolytopeGraph:
    n = 1 << d
    return PolytopeGraph.from_edges(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(d)
                                        if v < v ^ (1 << i)])


def simplex_prism_graph(k: int) -> PolytopeGraph:
    """K_k x K_2, the graph of the prism over a (k-1)-simplex."""
    edges = [(a, b) for a, b in combinations(range(k), 2)]
    edges += [(a + k, b + k) for a, b in combinations(range(k), 2)]
    edges += [(a, a + k) for a in range(k)]
    return PolytopeGraph.from_edges(2 * k, edges)


def polygon_graph(k: int) -> PolytopeGraph:
    return PolytopeGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def truncated_simplex(d: int, t: int) -> FaceLattice:
    """The d-simplex with ``t`` of its original vertices cut off one at a time."""
    if not 0 <= t <= d + 1:
        raise ValueError(f"a {d}-simplex has only {d + 1} vertices")
    lattice = make_simplex(d)
    for v in range(t):
        lattice = cut_polytope(lattice, [v]).child
    return lattice
