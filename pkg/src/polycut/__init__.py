"""Enumerate simple polytopes combinatorially by cutting vertices off the simplex."""

from .canon import are_isomorphic, canonical_key, lattice_key
from .cutsets import Cutset, enumerate_cutsets, is_valid_cutset
from .cutter import cut_polytope, push_facet
from .enumerate import Catalog, CatalogEntry, EnumerationConfig, enumerate_all, resume
from .lattice import FaceLattice, PolytopeGraph, graph_of, make_simplex, validate

__all__ = [
    "Catalog", "CatalogEntry", "Cutset", "EnumerationConfig", "FaceLattice", "PolytopeGraph",
    "are_isomorphic", "canonical_key", "cut_polytope", "enumerate_all", "enumerate_cutsets",
    "graph_of", "is_valid_cutset", "lattice_key", "make_simplex", "push_facet", "resume",
    "validate",
]

__version__ = "0.1.0"
