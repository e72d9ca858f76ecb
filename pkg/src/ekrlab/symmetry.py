"""Automorphism generators of vertex-coloured graphs (backed by nauty).

Used only to prune symmetric branches in the exact search; every result stays
exact when pynauty is unavailable, just slower.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, bits

try:
    import pynauty
except ImportError:  # pragma: no cover - exercised only without the extension
    pynauty = None

Perm = tuple[int, ...]


def available() -> bool:
    return pynauty is not None


def automorphism_generators(g: Graph, cells: Sequence[Sequence[int]] | None = None) -> list[Perm]:
    """Generators of the automorphisms of ``g`` preserving each cell of ``cells``.

    Permutations are 0-based tuples over vertex positions (label - 1).  An empty
    list means the group is trivial (or that symmetry support is missing).
    """
    n = g.order
    if pynauty is None or n <= 1:
        return []
    adjacency = {i: [j - 1 for j in bits(g.rows[i])] for i in range(n)}
    coloring = [set(x - 1 for x in c) for c in cells] if cells else []
    nauty_graph = pynauty.Graph(n, directed=False, adjacency_dict=adjacency, vertex_coloring=coloring)
    generators = pynauty.autgrp(nauty_graph)[0]
    return [tuple(p) for p in generators]


def membership_cells(n: int, masks: Sequence[int]) -> list[list[int]]:
    """Partition 1..n by the membership pattern of each vertex in ``masks``."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for x in range(1, n + 1):
        key = tuple((m >> (x - 1)) & 1 for m in masks)
        groups.setdefault(key, []).append(x)
    return [groups[k] for k in sorted(groups)]


def permute_mask(mask: int, perm: Perm) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out
