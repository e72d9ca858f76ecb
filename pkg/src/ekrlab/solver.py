"""Maximum intersecting families, EKR verdicts and theorem sweeps."""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .families import Family, independent_masks, is_intersecting, is_star_family, max_star
from .graph import Graph, parse_spec
from .search import BudgetExceeded, IntersectingSearch

DEFAULT_NODE_BUDGET = 2_000_000
DEFAULT_FAMILY_CAP = 1_000_000

STRICT = "strict"
NOT_STRICT = "not-strict"
VACUOUS = "vacuous"
CAP_HIT = "unknown-cap-hit"


class ResourceCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class MaxIntersecting:
    size: int
    witness: Family
    nodes: int


def _spec_of(g: Graph) -> str:
    return g.provenance if g.provenance is not None else f"graph(n={g.order},edges={g.edges()})"


def max_intersecting(g: Graph, r: int, budget: int | None = DEFAULT_NODE_BUDGET) -> MaxIntersecting:
    """Exact maximum intersecting subfamily of the independent r-sets of ``g``.

    The answer is the larger of the biggest star and the biggest family with
    no common vertex; the second is found by branch and bound seeded with the
    first, so nothing is approximated.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    masks = independent_masks(g, r)
    if not masks:
        return MaxIntersecting(0, Family(r), 0)
    best_star = max_star(g, r)
    search = IntersectingSearch(g, masks, budget=budget)
    try:
        res = search.max_nonstar(best_star.size)
    except BudgetExceeded as exc:
        raise ResourceCapError(str(exc)) from None
    if res.clique:
        return MaxIntersecting(res.size, Family.from_masks(r, res.clique), res.nodes)
    x = best_star.argmax[0]
    witness = Family.from_masks(r, (m for m in masks if (m >> (x - 1)) & 1))
    return MaxIntersecting(best_star.size, witness, res.nodes)


@dataclass(frozen=True)
class MaximumFamilies:
    size: int
    families: list[Family]
    complete: bool
    nodes: int


def enumerate_maximum_families(g: Graph, r: int, cap: int = DEFAULT_FAMILY_CAP,
                               budget: int | None = DEFAULT_NODE_BUDGET) -> MaximumFamilies:
    """All intersecting families of maximum size (at most ``cap`` of them)."""
    best = max_intersecting(g, r, budget)
    masks = independent_masks(g, r)
    search = IntersectingSearch(g, masks, budget=budget, symmetric=False)
    try:
        res = search.enumerate_cliques(best.size, cap)
    except BudgetExceeded as exc:
        raise ResourceCapError(str(exc)) from None
    fams = sorted((Family.from_masks(r, c) for c in res.cliques), key=lambda f: f.sets)
    return MaximumFamilies(best.size, fams, res.complete, best.nodes + res.nodes)


@dataclass
class EkrReport:
    spec: str
    r: int
    max_star_size: int
    star_argmax: tuple[int, ...]
    max_intersecting_size: int | None
    witness: Family | None
    is_ekr: bool | None
    is_strict: str
    non_star_witness: Family | None = None
    stats: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def vacuous(self) -> bool:
        return self.is_strict == VACUOUS

    def to_json(self) -> dict:
        """Certificate form; wall-clock time is left out so reruns compare byte for byte."""
        return {
            "spec": self.spec,
            "r": self.r,
            "max_star_size": self.max_star_size,
            "star_argmax": list(self.star_argmax),
            "max_intersecting_size": self.max_intersecting_size,
            "witness": None if self.witness is None else self.witness.to_json(),
            "is_ekr": self.is_ekr,
            "is_strict": self.is_strict,
            "non_star_witness": None if self.non_star_witness is None else self.non_star_witness.to_json(),
            "stats": dict(self.stats),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EkrReport":
        from .families import family_from_json

        def fam(x):
            return None if x is None else family_from_json(x)

        return cls(obj["spec"], obj["r"], obj["max_star_size"], tuple(obj["star_argmax"]),
                   obj["max_intersecting_size"], fam(obj["witness"]), obj["is_ekr"], obj["is_strict"],
                   fam(obj["non_star_witness"]), dict(obj["stats"]))


def ekr_verdict(g: Graph, r: int, node_budget: int | None = DEFAULT_NODE_BUDGET,
                family_cap: int = DEFAULT_FAMILY_CAP) -> EkrReport:
    """Decide r-EKR and strict r-EKR for ``g`` exactly.

    Strictness is settled by searching directly for a non-star intersecting
    family as large as the largest star, which avoids listing every maximum
    family (there can be 2^126 of them for ``empty:10`` at r=5).
    ``family_cap`` is kept for interface symmetry with the enumeration route.
    """
    del family_cap
    start = time.perf_counter()
    spec = _spec_of(g)
    masks = independent_masks(g, r)
    stars = max_star(g, r)
    if not masks:
        return EkrReport(spec, r, 0, (), 0, Family(r), True, VACUOUS,
                         stats={"nodes": 0, "strict_nodes": 0, "independent_sets": 0},
                         elapsed_ms=(time.perf_counter() - start) * 1000)

    stats = {"nodes": 0, "strict_nodes": 0, "independent_sets": len(masks)}
    x = stars.argmax[0]
    star_family = Family.from_masks(r, (m for m in masks if (m >> (x - 1)) & 1))

    # 1. any non-star family strictly larger than the largest star?
    try:
        res = IntersectingSearch(g, masks, budget=node_budget).max_nonstar(stars.size)
    except BudgetExceeded as exc:
        stats["nodes"] = exc.nodes
        return EkrReport(spec, r, stars.size, stars.argmax, None, None, None, CAP_HIT, stats=stats,
                         elapsed_ms=(time.perf_counter() - start) * 1000)
    stats["nodes"] = res.nodes
    if res.clique:
        big = Family.from_masks(r, res.clique)
        return EkrReport(spec, r, stars.size, stars.argmax, res.size, big, False, NOT_STRICT, big, stats,
                         (time.perf_counter() - start) * 1000)

    # 2. EKR holds; a non-star family matching the star breaks strictness
    try:
        tie = IntersectingSearch(g, masks, budget=node_budget).max_nonstar(stars.size - 1)
    except BudgetExceeded as exc:
        stats["strict_nodes"] = exc.nodes
        return EkrReport(spec, r, stars.size, stars.argmax, stars.size, star_family, True, CAP_HIT,
                         stats=stats, elapsed_ms=(time.perf_counter() - start) * 1000)
    stats["strict_nodes"] = tie.nodes
    if tie.clique:
        other = Family.from_masks(r, tie.clique)
        return EkrReport(spec, r, stars.size, stars.argmax, stars.size, star_family, True, NOT_STRICT,
                         other, stats, (time.perf_counter() - start) * 1000)
    return EkrReport(spec, r, stars.size, stars.argmax, stars.size, star_family, True, STRICT,
                     None, stats, (time.perf_counter() - start) * 1000)


def check_report(g: Graph, rep: EkrReport) -> list[str]:
    """Internal consistency problems of a report (empty list when sound)."""
    problems = []
    if rep.witness is not None:
        if not is_intersecting(rep.witness):
            problems.append("witness is not intersecting")
        if len(rep.witness) != rep.max_intersecting_size:
            problems.append("witness size differs from reported maximum")
    if rep.is_ekr is not None and rep.max_intersecting_size is not None:
        if rep.is_ekr != (rep.max_intersecting_size == rep.max_star_size):
            problems.append("is_ekr disagrees with sizes")
    if (rep.non_star_witness is not None) != (rep.is_strict == NOT_STRICT):
        problems.append("non-star witness presence disagrees with strictness verdict")
    if rep.non_star_witness is not None and is_star_family(rep.non_star_witness):
        problems.append("non-star witness has a common vertex")
    return problems


# ----------------------------------------------------------------- sweeps

SWEEP_CLASSES = ("empty", "complete-union", "cycle-power", "path-power", "mixed")

MIXED_PARTS = ("complete:1", "complete:2", "complete:3", "path:2:1", "path:3:1", "path:4:1",
               "cycle:3:1", "cycle:4:1")


@dataclass(frozen=True)
class SweepPoint:
    spec: str
    r: int
    expect_strict: bool = False  # the theorem claims strictness here
    check_endpoints: bool = False  # path powers: star maximised at 1 and n


@dataclass
class SweepRow:
    point: SweepPoint
    report: EkrReport | None
    status: str  # "pass", "fail", "skipped"
    problems: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "spec": self.point.spec,
            "r": self.point.r,
            "status": self.status,
            "problems": list(self.problems),
            "report": None if self.report is None else self.report.to_json(),
        }


@dataclass
class SweepResult:
    cls: str
    bounds: dict
    rows: list[SweepRow]

    @property
    def failures(self) -> list[SweepRow]:
        return [row for row in self.rows if row.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"class": self.cls, "bounds": dict(self.bounds), "rows": [row.to_json() for row in self.rows]}


def _partitions_min2(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of integers >= 2 summing to ``total``."""
    if total == 0:
        yield ()
        return
    top = total if max_part is None else min(max_part, total)
    for first in range(top, 1, -1):
        for rest in _partitions_min2(total - first, first):
            yield (first,) + rest


def _max_r(g: Graph) -> int:
    r = 0
    while independent_masks(g, r + 1):
        r += 1
    return r


def sweep_points(cls: str, n_max: int, k_max: int = 3, r: int | None = None,
                 n_min: int = 1) -> list[SweepPoint]:
    """Every in-hypothesis parameter point of the named theorem class."""
    points: list[SweepPoint] = []
    if cls == "empty":
        for n in range(max(n_min, 2), n_max + 1):
            for rr in range(1, n // 2 + 1):
                if r is None or rr == r:
                    points.append(SweepPoint(f"empty:{n}", rr, expect_strict=n > 2 * rr))
    elif cls == "complete-union":
        for total in range(max(n_min, 2), n_max + 1):
            for orders in _partitions_min2(total):
                orders = tuple(sorted(orders))
                spec = "union:" + "+".join(f"complete:{t}" for t in orders)
                uniform = len(set(orders)) == 1
                for rr in range(1, len(orders) + 1):
                    if r is not None and rr != r:
                        continue
                    strict = uniform and not (orders[0] == 2 and len(orders) == rr)
                    points.append(SweepPoint(spec, rr, expect_strict=strict))
    elif cls in ("cycle-power", "path-power"):
        kind = "cycle" if cls == "cycle-power" else "path"
        for n in range(max(n_min, 1), n_max + 1):
            for k in range(1, min(k_max, n) + 1):
                spec = f"{kind}:{n}:{k}"
                top = _max_r(parse_spec(spec))
                for rr in range(1, top + 1):
                    if r is not None and rr != r:
                        continue
                    if kind == "cycle":
                        points.append(SweepPoint(spec, rr, expect_strict=not (n == 2 * rr + 2 and k == 1)))
                    else:
                        points.append(SweepPoint(spec, rr, check_endpoints=True))
    elif cls == "mixed":
        rr = 2 if r is None else r
        sizes = {p: parse_spec(p).order for p in MIXED_PARTS}
        for count in range(2 * rr, n_max + 1):
            for combo in itertools.combinations_with_replacement(MIXED_PARTS, count):
                if "complete:1" not in combo or sum(sizes[p] for p in combo) > n_max:
                    continue
                points.append(SweepPoint("union:" + "+".join(combo), rr))
    else:
        raise ValueError(f"unknown sweep class {cls!r}; expected one of {', '.join(SWEEP_CLASSES)}")
    return points


def evaluate_point(point: SweepPoint, node_budget: int | None = DEFAULT_NODE_BUDGET) -> SweepRow:
    g = parse_spec(point.spec)
    rep = ekr_verdict(g, point.r, node_budget=node_budget)
    if rep.is_ekr is None:
        return SweepRow(point, rep, "skipped", ["node budget exhausted"])
    problems = check_report(g, rep)
    if point.expect_strict and rep.is_strict == CAP_HIT and not problems and rep.is_ekr:
        return SweepRow(point, rep, "skipped", ["node budget exhausted before strictness was settled"])
    if not rep.is_ekr:
        problems.append(f"not {point.r}-EKR: intersecting family of size {rep.max_intersecting_size} "
                        f"beats largest star {rep.max_star_size}")
    if point.expect_strict and rep.is_strict == NOT_STRICT:
        problems.append("expected strictly EKR but a non-star maximum family exists")
    if point.check_endpoints and rep.max_star_size > 0:
        if not {1, g.order} <= set(rep.star_argmax):
            problems.append(f"largest star not attained at both endpoints: argmax {list(rep.star_argmax)}")
    return SweepRow(point, rep, "fail" if problems else "pass", problems)


def _evaluate(args: tuple[SweepPoint, int | None]) -> SweepRow:
    return evaluate_point(*args)


def run_points(func: Callable, items: list, workers: int = 1) -> list:
    """Order-preserving map, optionally over a process pool."""
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (8 * workers))))


def theorem_sweep(cls: str, n_max: int, k_max: int = 3, r: int | None = None, n_min: int = 1,
                  node_budget: int | None = DEFAULT_NODE_BUDGET, workers: int = 1) -> SweepResult:
    """Verify the theorem attached to ``cls`` at every in-hypothesis point.

    Stops at the first failing point (in canonical order); skipped points
    never hide a failure because they are reported with their own status.
    """
    points = sweep_points(cls, n_max, k_max, r, n_min)
    rows = run_points(_evaluate, [(p, node_budget) for p in points], workers)
    for i, row in enumerate(rows):
        if row.status == "fail":
            rows = rows[: i + 1]
            break
    bounds = {"n_max": n_max, "k_max": k_max, "r": r, "n_min": n_min}
    return SweepResult(cls, bounds, rows)


def counterexample_certificate(row: SweepRow) -> dict:
    rep = row.report
    return {
        "kind": "ekr-counterexample",
        "graph": row.point.spec,
        "r": row.point.r,
        "failing_checks": list(row.problems),
        "family": None if rep is None or rep.witness is None else rep.witness.to_json(),
        "non_star_family": None if rep is None or rep.non_star_witness is None else rep.non_star_witness.to_json(),
        "report": None if rep is None else rep.to_json(),
    }
