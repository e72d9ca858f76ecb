"""Brute-force reference computations, deliberately independent of the library's
bit-mask enumeration and branch-and-bound code."""

from itertools import combinations

import networkx as nx


def edge_set(g):
    return {frozenset(e) for e in g.edges()}


def brute_independent(g, r):
    edges = edge_set(g)
    return [c for c in combinations(range(1, g.order + 1), r)
            if not any(frozenset(p) in edges for p in combinations(c, 2))]


def brute_star(g, v, r):
    return [s for s in brute_independent(g, r) if v in s]


def brute_max_intersecting(sets):
    """Exhaustive include/exclude over every subfamily, pruned only by count."""
    sets = [frozenset(s) for s in sets]
    best = [0, ()]

    def go(i, chosen):
        if len(chosen) + (len(sets) - i) <= best[0]:
            return
        if i == len(sets):
            best[0], best[1] = len(chosen), tuple(chosen)
            return
        s = sets[i]
        if all(s & c for c in chosen):
            go(i + 1, chosen + [s])
        go(i + 1, chosen)

    go(0, [])
    return best[0], best[1]


def all_max_intersecting(sets):
    """Every intersecting subfamily of maximum size (tiny inputs only)."""
    size, _ = brute_max_intersecting(sets)
    out = []
    for combo in combinations(sets, size):
        if all(set(a) & set(b) for a, b in combinations(combo, 2)):
            out.append(tuple(sorted(tuple(sorted(s)) for s in combo)))
    return size, sorted(out)


def nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(range(1, g.order + 1))
    h.add_edges_from(g.edges())
    return h


def nx_contract(g, v, w):
    """networkx contraction, relabeled by compacting labels above w."""
    h = nx.contracted_nodes(nx_graph(g), v, w, self_loops=False)
    mapping = {x: (x if x < w else x - 1) for x in h.nodes}
    h = nx.relabel_nodes(h, mapping)
    return sorted(tuple(sorted(e)) for e in h.edges()), h.number_of_nodes()


def nx_down(g, v, w):
    h = nx_graph(g)
    gone = {v, w} | set(h[v]) | set(h[w])
    h.remove_nodes_from(gone)
    keep = sorted(h.nodes)
    mapping = {x: i + 1 for i, x in enumerate(keep)}
    h = nx.relabel_nodes(h, mapping)
    return sorted(tuple(sorted(e)) for e in h.edges()), len(keep), gone


def oracle_point(item, limit=18):
    """Solver against exhaustive search for one (spec, r); None when I^(r) is too large."""
    from ekrlab.graph import parse_spec
    from ekrlab.solver import max_intersecting

    spec, r = item
    g = parse_spec(spec)
    sets = brute_independent(g, r)
    if not sets or len(sets) > limit:
        return None
    return {"spec": spec, "r": r, "sets": len(sets), "oracle": brute_max_intersecting(sets)[0],
            "solver": max_intersecting(g, r).size}
