"""Exact Erdős–Ko–Rado checks for small graphs: independent r-sets, edge
contraction decompositions, and exhaustive maximum intersecting families."""

from .compression import (decompose, path_certificate, star_components, verify_partition_lemma)
from .families import (Family, enumerate_independent, is_independent, is_intersecting, max_star, star)
from .graph import (EdgeRef, Graph, complete_graph, contract, cycle_power, disjoint_union, down, empty_graph,
                    neighbors, parse_spec, path_power, render)
from .solver import ekr_verdict, enumerate_maximum_families, max_intersecting, theorem_sweep

__version__ = "0.1.0"

__all__ = [
    "EdgeRef", "Family", "Graph", "complete_graph", "contract", "cycle_power", "decompose", "disjoint_union",
    "down", "ekr_verdict", "empty_graph", "enumerate_independent", "enumerate_maximum_families", "is_independent",
    "is_intersecting", "max_intersecting", "max_star", "neighbors", "parse_spec", "path_certificate", "path_power",
    "render", "star", "star_components", "theorem_sweep", "verify_partition_lemma",
]
