"""Seeded property suites over the compression machinery.

Each suite returns a JSON-ready dict whose content depends only on its
arguments (never on the worker count), so two runs can be compared byte for
byte.
"""

from __future__ import annotations

import random
from functools import partial

from .compression import (decompose, full_star, path_certificate, star_components, verify_partition_lemma)
from .families import Family, independent_masks
from .graph import EdgeRef, Graph, closed_neighborhood, parse_spec, path_power
from .solver import run_points, sweep_points

P_CHOICES = (0.2, 0.5, 0.8)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < p]
    return Graph.from_edges(n, edges, None)


def random_intersecting_family(rng: random.Random, g: Graph, r: int) -> Family:
    """Random subfamily of a random star, mutated with a few extra sets, then
    filtered greedily (in shuffled order) down to an intersecting family."""
    pool = independent_masks(g, r)
    centres = sorted({x for m in pool for x in range(g.order) if (m >> x) & 1})
    x = rng.choice(centres)
    star = [m for m in pool if (m >> x) & 1]
    chosen = [m for m in star if rng.random() < 0.5] or [rng.choice(star)]
    chosen += [rng.choice(pool) for _ in range(rng.randint(0, 3))]
    rng.shuffle(chosen)
    kept: list[int] = []
    for m in chosen:
        if m not in kept and all(m & k for k in kept):
            kept.append(m)
    return Family.from_masks(r, kept)


def random_instance(seed: int, index: int, n_max: int = 10, r_max: int = 4) -> tuple[Graph, Family, float]:
    rng = random.Random(f"ekrlab:{seed}:{index}")
    while True:
        n = rng.randint(2, n_max)
        p = rng.choice(P_CHOICES)
        g = random_graph(rng, n, p)
        if g.num_edges:
            break
    top = 1
    while top < r_max and independent_masks(g, top + 1):
        top += 1
    r = rng.randint(1, top)
    return g, random_intersecting_family(rng, g, r), p


def _partition_instance(index: int, seed: int) -> dict:
    g, fam, p = random_instance(seed, index)
    failures = []
    splits = []
    for a, b in g.edges():
        for e in (EdgeRef(a, b), EdgeRef(b, a)):
            d = decompose(g, e, fam)
            rep = verify_partition_lemma(d)
            splits.append([e.v, e.w, len(d.B), len(d.C), len(d.D), len(d.E)])
            if not rep.ok:
                failures.append({"edge": [e.v, e.w], "checks": rep.to_json()})
    return {"index": index, "order": g.order, "p": p, "edges": [list(e) for e in g.edges()],
            "A": fam.to_json(), "splits": splits, "failures": failures}


def partition_suite(count: int = 1000, seed: int = 0, workers: int = 1) -> dict:
    """Random graphs, random intersecting families, every edge in both orientations."""
    rows = run_points(partial(_partition_instance, seed=seed), list(range(count)), workers)
    return {"suite": "partition", "seed": seed, "count": count,
            "decompositions": sum(len(row["splits"]) for row in rows),
            "failures": sum(len(row["failures"]) for row in rows), "instances": rows}


def _star_identity_graph(spec: str, r_max: int) -> dict:
    g = parse_spec(spec)
    checked, failures = 0, []
    for a, b in g.edges():
        for e in (EdgeRef(a, b), EdgeRef(b, a)):
            survivors = [x for x in g.vertices if x not in closed_neighborhood(g, e)]
            for r in range(1, r_max + 1):
                for x in survivors:
                    sc = star_components(g, e, x, r)
                    checked += 1
                    if not sc.holds:
                        failures.append({"edge": [e.v, e.w], "x": x, "r": r, "identity": sc.equation()})
    return {"spec": spec, "checked": checked, "failures": failures}


def suite_graph_specs(n_max: int = 10) -> list[str]:
    """Distinct graphs from the five theorem sweeps with at most ``n_max`` vertices."""
    seen: dict[str, None] = {}
    for cls, kwargs in (("empty", {}), ("complete-union", {}), ("cycle-power", {"k_max": 3}),
                        ("path-power", {"k_max": 3}), ("mixed", {"r": 2})):
        for point in sweep_points(cls, n_max, **kwargs):
            seen.setdefault(point.spec, None)
    return list(seen)


def star_identity_suite(specs: list[str], r_max: int = 4, workers: int = 1) -> dict:
    rows = run_points(partial(_star_identity_graph, r_max=r_max), specs, workers)
    return {"suite": "star-identity", "r_max": r_max, "graphs": len(rows),
            "checked": sum(row["checked"] for row in rows),
            "failures": sum(len(row["failures"]) for row in rows), "rows": rows}


def _path_point(params: tuple[int, int, int]) -> dict:
    n, k, r = params
    cert = path_certificate(n, k, r, full_star(path_power(n, k), 1, r))
    return {"n": n, "k": k, "r": r, "ok": cert.ok, "quantities": cert.quantities,
            "failed": [c.name for c in cert.report.checks if not c.passed]}


def path_certificate_suite(n_max: int = 12, k_max: int = 3, workers: int = 1) -> dict:
    """Full star at vertex 1 for every n >= k + 3 and every r with independent r-sets."""
    params = []
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            if n < k + 3:
                continue
            g = path_power(n, k)
            r = 1
            while independent_masks(g, r):
                params.append((n, k, r))
                r += 1
    rows = run_points(_path_point, params, workers)
    return {"suite": "path-certificate", "n_max": n_max, "k_max": k_max, "points": len(rows),
            "failures": sum(not row["ok"] for row in rows), "rows": rows}
