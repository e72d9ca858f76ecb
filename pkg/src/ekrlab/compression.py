"""Edge-contraction decomposition of intersecting families and its verifiers.

Given an intersecting family ``A`` of independent r-sets and an edge
``e = (v, w)``, the contraction ``c`` (w -> v) splits ``A`` into

* ``B``: images ``c(A)`` that remain independent in G/e,
* ``C``: sets ``A - {v}`` whose twin ``A - {v} + {w}`` is also in ``A``,
* ``D``: members holding ``v`` and a neighbour of ``w``,
* ``E``: members holding ``w`` and a neighbour of ``v``,

with ``|A| = |B| + |C| + |D| + |E|``.  ``B`` lives in G/e labels, ``C`` in
G-down-e labels, ``D`` and ``E`` in the labels of G.  Swapping the roles of
``v`` and ``w`` swaps ``D`` and ``E``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .families import Family, FamilyError, disjoint_pair, family_from_json, independent_masks, is_independent
from .graph import (EdgeRef, Graph, GraphError, VertexMap, as_edge, closed_neighborhood, contract, down, mask_of,
                    neighbors, path_power)


class DecompositionError(ValueError):
    """Input or decomposition breaks a structural precondition."""


class PreconditionError(ValueError):
    pass


def contraction_image(vmap: VertexMap, a) -> tuple[int, ...]:
    """c(A): every label pushed through the contraction map, as a sorted set."""
    if vmap.kind != "contract":
        raise GraphError("contraction_image needs a contraction map")
    return tuple(sorted({vmap(x) for x in a}))


@dataclass(frozen=True)
class Decomposition:
    graph: Graph
    edge: EdgeRef
    A: Family
    B: Family
    C: Family
    D: Family
    E: Family
    contracted: Graph
    contract_map: VertexMap
    downed: Graph
    down_map: VertexMap

    @property
    def r(self) -> int:
        return self.A.r


def _graph_json(g: Graph) -> dict:
    return {"order": g.order, "edges": [list(e) for e in g.edges()], "spec": g.provenance}


def _graph_from_json(obj: dict) -> Graph:
    return Graph.from_edges(obj["order"], [tuple(e) for e in obj["edges"]], obj.get("spec"))


def _check_family_input(g: Graph, e: EdgeRef, family: Family) -> None:
    try:
        g._check(e.v)
        g._check(e.w)
    except GraphError as exc:
        raise DecompositionError(str(exc)) from None
    if not g.adjacent(e.v, e.w):
        raise DecompositionError(f"({e.v},{e.w}) is not an edge")
    if family.r < 1:
        raise DecompositionError("family arity must be at least 1")
    for s in family:
        try:
            ok = is_independent(g, s)
        except GraphError as exc:
            raise DecompositionError(str(exc)) from None
        if not ok:
            raise DecompositionError(f"set {list(s)} is not independent")
    pair = disjoint_pair(family)
    if pair is not None:
        raise DecompositionError(f"family is not intersecting: {list(pair[0])} and {list(pair[1])} are disjoint")


def decompose(g: Graph, e, family: Family) -> Decomposition:
    e = as_edge(e)
    _check_family_input(g, e, family)
    v, w, r = e.v, e.w, family.r
    gc, cmap = contract(g, e)
    gd, dmap = down(g, e)
    members = set(family.sets)
    gamma_v, gamma_w = neighbors(g, v), neighbors(g, w)

    b, c, d, ee = set(), set(), [], []
    for a in family:
        image = contraction_image(cmap, a)
        if len(image) == r and is_independent(gc, image):
            b.add(image)
        rest = tuple(x for x in a if x != v)
        if v in a and tuple(sorted(rest + (w,))) in members:
            c.add(tuple(dmap(x) for x in rest))
        if v in a and gamma_w & set(rest):
            d.append(a)
        rest_w = {x for x in a if x != w}
        if w in a and gamma_v & rest_w:
            ee.append(a)
    if any(None in s for s in c):
        raise DecompositionError("a C-set meets the removed neighbourhood")
    return Decomposition(g, e, family, Family.of(r, b), Family.of(r - 1, c), Family.of(r, d), Family.of(r, ee),
                         gc, cmap, gd, dmap)


@dataclass
class Check:
    name: str
    description: str
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        return {"description": self.description, "pass": self.passed, "witness": self.witness}


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {c.name: c.to_json() for c in self.checks}


def _validate(d: Decomposition) -> None:
    """Structural invariants; breaches are malformed input, not lemma failures."""
    r = d.r
    gc, cmap = contract(d.graph, d.edge)
    gd, dmap = down(d.graph, d.edge)
    if (gc, cmap, gd, dmap) != (d.contracted, d.contract_map, d.downed, d.down_map):
        raise DecompositionError("stored G/e, G-down-e or vertex maps do not match the edge")
    if d.B.r != r or d.D.r != r or d.E.r != r or d.C.r != r - 1:
        raise DecompositionError("family arities are inconsistent")
    for s in d.B:
        if not is_independent(d.contracted, s):
            raise DecompositionError(f"B-set {list(s)} is not independent in G/e")
    for s in d.C:
        if not is_independent(d.downed, s):
            raise DecompositionError(f"C-set {list(s)} is not independent in G-down-e")
    members = set(d.A.sets)
    for name, fam in (("D", d.D), ("E", d.E)):
        for s in fam:
            if s not in members:
                raise DecompositionError(f"{name}-set {list(s)} is not a member of A")


def _meet_check(name, description, left, right, universe) -> Check:
    for x in left:
        for y in right:
            if not set(x) & set(y) & universe:
                return Check(name, description, False, [list(x), list(y)])
    return Check(name, description, True)


def verify_partition_lemma(d: Decomposition) -> Report:
    """Evaluate all seven properties of the decomposition literally."""
    try:
        _validate(d)
    except (GraphError, FamilyError) as exc:
        raise DecompositionError(str(exc)) from None
    g, v, w = d.graph, d.edge.v, d.edge.w
    gamma_v, gamma_w = neighbors(g, v), neighbors(g, w)
    sizes = {k: len(getattr(d, k)) for k in "ABCDE"}
    rep = Report()

    total = sizes["B"] + sizes["C"] + sizes["D"] + sizes["E"]
    rep.checks.append(Check("i", "|A| = |B| + |C| + |D| + |E|", sizes["A"] == total,
                            None if sizes["A"] == total else sizes))

    for name, fam, where in (("ii", d.B, "G/e"), ("iii", d.C, "G-down-e")):
        pair = disjoint_pair(fam)
        rep.checks.append(Check(name, f"{'BC'[name == 'iii']} is intersecting in {where}", pair is None,
                                None if pair is None else [list(p) for p in pair]))

    expect_d = {a for a in d.A if v in a and gamma_w & (set(a) - {v})}
    expect_e = {a for a in d.A if w in a and gamma_v & (set(a) - {w})}
    for name, fam, expect, desc in (
        ("iv", d.D, expect_d, "D = {A : v in A, N(w) meets A - v}"),
        ("v", d.E, expect_e, "E = {A : w in A, N(v) meets A - w}"),
    ):
        diff = sorted(set(fam.sets) ^ expect)
        rep.checks.append(Check(name, desc, not diff, [list(s) for s in diff] or None))

    survivors = set(d.down_map.survivors)
    c_in_g = [d.down_map.pull_back(s) for s in d.C]
    rep.checks.append(_meet_check("vi", "every C-set meets every (D u E)-set inside V(G-down-e)",
                                  c_in_g, list(d.D) + list(d.E), survivors))
    rep.checks.append(_meet_check("vii", "every D-set meets every E-set inside V(G-down-e)",
                                  list(d.D), list(d.E), survivors))
    return rep


def decomposition_to_json(d: Decomposition, report: Report | None = None) -> dict:
    return {
        "graph": _graph_json(d.graph),
        "edge": [d.edge.v, d.edge.w],
        "A": d.A.to_json(),
        "B": d.B.to_json(),
        "C": d.C.to_json(),
        "D": d.D.to_json(),
        "E": d.E.to_json(),
        "G_contract": _graph_json(d.contracted),
        "G_down": _graph_json(d.downed),
        "vertex_map": {"contract": list(d.contract_map.images), "down": list(d.down_map.images)},
        "checks": None if report is None else report.to_json(),
    }


def decomposition_from_json(obj) -> Decomposition:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return Decomposition(
            _graph_from_json(obj["graph"]), EdgeRef(*obj["edge"]),
            *(family_from_json(obj[k]) for k in "ABCDE"),
            _graph_from_json(obj["G_contract"]), VertexMap("contract", tuple(obj["vertex_map"]["contract"])),
            _graph_from_json(obj["G_down"]), VertexMap("down", tuple(obj["vertex_map"]["down"])),
        )
    except (KeyError, TypeError) as exc:
        raise DecompositionError(f"malformed decomposition JSON: {exc}") from None


# ---------------------------------------------------------------- star identity

@dataclass(frozen=True)
class StarComponents:
    x: int
    r: int
    edge: EdgeRef
    star_g: Family        # stars of x in G, in G labels
    star_contract: Family  # in G/e labels
    star_down: Family      # arity r-1, in G-down-e labels
    D_x: Family
    E_x: Family

    @property
    def counts(self) -> tuple[int, int, int, int, int]:
        return (len(self.star_g), len(self.star_contract), len(self.star_down), len(self.D_x), len(self.E_x))

    @property
    def holds(self) -> bool:
        lhs, *rhs = self.counts
        return lhs == sum(rhs) and not set(self.D_x.sets) & set(self.E_x.sets)

    def equation(self) -> str:
        lhs, *rhs = self.counts
        return f"{lhs} = " + " + ".join(map(str, rhs))

    def to_json(self) -> dict:
        return {
            "x": self.x, "r": self.r, "edge": [self.edge.v, self.edge.w],
            "counts": dict(zip(("star_G", "star_G_contract", "star_G_down", "D_x", "E_x"), self.counts)),
            "D_x": self.D_x.to_json(), "E_x": self.E_x.to_json(),
            "identity": self.equation(), "holds": self.holds,
        }


def _star_masks(g: Graph, x: int, r: int) -> list[int]:
    if r == 0:
        return []
    bit = 1 << (x - 1)
    allowed = ((1 << g.order) - 1) & ~g.rows[x - 1] & ~bit
    return [m | bit for m in independent_masks(g, r - 1, within=allowed)]


def star_components(g: Graph, e, x: int, r: int) -> StarComponents:
    """Every family in the star identity for ``x``, computed by enumeration."""
    e = as_edge(e)
    if r < 1:
        raise PreconditionError("r must be a positive integer")
    g._check(x)
    gc, cmap = contract(g, e)
    gd, dmap = down(g, e)
    if x in closed_neighborhood(g, e):
        raise PreconditionError(f"vertex {x} does not survive in G-down-e")
    v, w = e.v, e.w
    star_g = Family.from_masks(r, _star_masks(g, x, r))
    star_c = Family.from_masks(r, _star_masks(gc, cmap(x), r))
    star_d = Family.from_masks(r - 1, _star_masks(gd, dmap(x), r - 1))
    nv, nw = mask_of(neighbors(g, v)), mask_of(neighbors(g, w))
    bv, bw = 1 << (v - 1), 1 << (w - 1)
    d_x = [s for s in star_g.masks() if s & bv and (s & ~bv) & nw]
    e_x = [s for s in star_g.masks() if s & bw and (s & ~bw) & nv]
    return StarComponents(x, r, e, star_g, star_c, star_d, Family.from_masks(r, d_x), Family.from_masks(r, e_x))


# ------------------------------------------------------------ path certificate

@dataclass
class PathCertificate:
    n: int
    k: int
    r: int
    decomposition: Decomposition
    F: Family
    quantities: dict
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "r": self.r,
            "decomposition": decomposition_to_json(self.decomposition),
            "F": self.F.to_json(),
            "quantities": dict(self.quantities),
            "checks": self.report.to_json(),
        }


def _star_count(n: int, k: int, r: int) -> int:
    """|stars of vertex 1 among independent r-sets of the k-th power of the n-path| (0 if n < 1)."""
    if n < 1 or r < 1:
        return 0
    return len(_star_masks(path_power(n, k), 1, r))


def path_certificate(n: int, k: int, r: int, family: Family) -> PathCertificate:
    """Replay the contraction step for path powers on a concrete family.

    Every quantity is recomputed by enumeration on the relevant graph.
    """
    if n < k + 3:
        raise PreconditionError(f"need n >= k + 3, got n={n}, k={k}")
    if family.r != r:
        raise PreconditionError(f"family arity {family.r} differs from r={r}")
    g = path_power(n, k)
    for s in family:
        if not is_independent(g, s):
            raise PreconditionError(f"set {list(s)} is not independent in path:{n}:{k}")
    pair = disjoint_pair(family)
    if pair is not None:
        raise PreconditionError(f"family is not intersecting: {list(pair[0])} and {list(pair[1])} are disjoint")

    d = decompose(g, (n - 1, n), family)
    sep = n - k - 1
    rep = verify_partition_lemma(d)
    checks = rep.checks
    c_in_g = [d.down_map.pull_back(s) for s in d.C]
    f_sets = [tuple(x for x in s if x != n) for s in d.E]
    F = Family.of(r - 1, f_sets)
    cf = set(c_in_g) | set(F.sets)

    def add(name, desc, ok, witness=None):
        checks.append(Check(name, desc, bool(ok), None if ok else witness))

    expect_e = sorted(a for a in family if n in a and sep in a)
    add("D_empty", "D is empty", len(d.D) == 0, [list(s) for s in d.D])
    add("E_shape", f"E = members containing {n} and {sep}", list(d.E.sets) == expect_e,
        [list(s) for s in sorted(set(d.E.sets) ^ set(expect_e))])
    clash = [list(s) for s in F if s in set(c_in_g)]
    sep_ok = all(sep in s for s in F) and not any(sep in s for s in c_in_g)
    add("C_F_disjoint", f"{sep} lies in every F-set and in no C-set", sep_ok and not clash, clash)
    cf_graph = path_power(sep, k)
    inside = all(max(s, default=0) <= sep and is_independent(cf_graph, s) for s in cf)
    add("C_F_universe", f"C u F consists of independent sets of path:{sep}:{k}", inside)
    pair = disjoint_pair(sorted(cf))
    add("C_F_intersecting", "C u F is intersecting", pair is None, pair and [list(p) for p in pair])

    q = {
        "A": len(family), "B": len(d.B), "C": len(d.C), "D": len(d.D), "E": len(d.E), "C_union_F": len(cf),
        "star_n": _star_count(n, k, r),
        "star_n_minus_1": _star_count(n - 1, k, r),
        "star_sep_r_minus_1": _star_count(sep, k, r - 1),
        "star_sep_minus_1_r_minus_1": _star_count(n - k - 2, k, r - 1),
    }
    g_stars = _star_masks(g, 1, r)
    q["E_1"] = sum(1 for s in g_stars if (s >> (sep - 1)) & 1 and (s >> (n - 1)) & 1)

    add("sum_split", "|A| = |B| + |C| + |E|", q["A"] == q["B"] + q["C"] + q["E"], q)
    add("union_size", "|C u F| = |C| + |E|", q["C_union_F"] == q["C"] + q["E"], q)
    add("C_F_bound", f"|C u F| <= star of 1 in path:{sep}:{k} at r-1", q["C_union_F"] <= q["star_sep_r_minus_1"], q)
    add("B_bound", f"|B| <= star of 1 in path:{n - 1}:{k}", q["B"] <= q["star_n_minus_1"], q)
    add("A_bound", "|A| <= the two star sizes combined",
        q["A"] <= q["star_n_minus_1"] + q["star_sep_r_minus_1"], q)
    add("star_identity", "star at 1 splits as G/e star + G-down-e star + E_1",
        q["star_n"] == q["star_n_minus_1"] + q["star_sep_minus_1_r_minus_1"] + q["E_1"], q)
    add("splice", f"star of 1 in path:{sep}:{k} = star in path:{n - k - 2}:{k} + |E_1| (arity r-1)",
        q["star_sep_r_minus_1"] == q["star_sep_minus_1_r_minus_1"] + q["E_1"], q)
    add("final_bound", "|A| <= star of 1 in G", q["A"] <= q["star_n"], q)
    return PathCertificate(n, k, r, d, F, q, rep)


def full_star(g: Graph, x: int, r: int) -> Family:
    return Family.from_masks(r, _star_masks(g, x, r))

