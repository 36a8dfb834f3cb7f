"""Automorphism groups and fixed points of vertex-transitive graphs of valency 3 and 4."""

__version__ = "0.1.0"

from .autsearch import are_isomorphic, automorphism_group, canonical_form, find_isomorphism
from .graph import Digraph, Graph, from_arcs, from_edges, graph6_decode, graph6_encode
from .perm import Capped, Permutation, PermGroup, schreier_sims
from .symmetry import analyze, classify_family, fixicity, thm1_verdict, thm2_verdict

__all__ = [
    "Capped",
    "Digraph",
    "Graph",
    "PermGroup",
    "Permutation",
    "analyze",
    "are_isomorphic",
    "automorphism_group",
    "canonical_form",
    "classify_family",
    "find_isomorphism",
    "fixicity",
    "from_arcs",
    "from_edges",
    "graph6_decode",
    "graph6_encode",
    "schreier_sims",
    "thm1_verdict",
    "thm2_verdict",
]
