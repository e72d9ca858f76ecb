"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION n: PASS|FAIL`` line (also repeated in
the terminal summary). All suite results are computed once with one worker
and reused; criterion 10 recomputes them with four workers and compares the
JSON bytes.
"""

import json
import time

import pytest

from conftest import ACCEPTANCE_LINES
from ekrlab.families import is_intersecting, is_star_family
from ekrlab.compression import star_components
from ekrlab.graph import parse_spec, path_power
from ekrlab.solver import NOT_STRICT, STRICT, ekr_verdict, run_points, sweep_points, theorem_sweep
from ekrlab.suites import partition_suite, path_certificate_suite, star_identity_suite, suite_graph_specs
from oracles import oracle_point

SWEEPS = {
    1: ("empty", {"n_max": 10}),
    2: ("complete-union", {"n_max": 12}),
    3: ("cycle-power", {"n_max": 12, "k_max": 3}),
    4: ("path-power", {"n_max": 12, "k_max": 3}),
    5: ("mixed", {"n_max": 12, "r": 2}),
}
LIMITS = {1: 300, 2: 300, 3: 300, 4: 300, 5: 600, 6: 300}


def verdict(n, ok, detail):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def compute_all(workers):
    out, seconds = {}, {}
    for n, (cls, kwargs) in SWEEPS.items():
        start = time.perf_counter()
        out[n] = theorem_sweep(cls, workers=workers, **kwargs).to_json()
        seconds[n] = time.perf_counter() - start
    start = time.perf_counter()
    out[6] = partition_suite(1000, seed=0, workers=workers)
    seconds[6] = time.perf_counter() - start
    out[7] = star_identity_suite(suite_graph_specs(10), r_max=4, workers=workers)
    items = []
    for cls, kwargs in SWEEPS.values():
        items += [(p.spec, p.r) for p in sweep_points(cls, **kwargs)]
    out[8] = [row for row in run_points(oracle_point, items, workers) if row is not None]
    out[9] = path_certificate_suite(12, 3, workers=workers)
    return out, seconds


@pytest.fixture(scope="session")
def results():
    return compute_all(1)


def sweep_failures(obj):
    return [row for row in obj["rows"] if row["status"] != "pass"]


def test_criterion_1_empty_graphs(results):
    out, seconds = results
    rows = out[1]["rows"]
    wrong = []
    for r in range(1, 6):
        for n in range(2 * r, 11):
            row = next(x for x in rows if x["spec"] == f"empty:{n}" and x["r"] == r)
            rep = row["report"]
            strict = rep["is_strict"] == STRICT
            if rep["is_ekr"] is not True or strict != (n > 2 * r):
                wrong.append(f"(n={n}, r={r}): ekr={rep['is_ekr']} strictness={rep['is_strict']}")
    ok = not wrong and seconds[1] < LIMITS[1]
    verdict(1, ok, f"{len(rows)} points in {seconds[1]:.1f}s; "
                   + ("strict exactly when n > 2r" if not wrong else "mismatch at " + ", ".join(wrong)))


def test_criterion_2_complete_unions(results):
    out, seconds = results
    bad = sweep_failures(out[2])
    rep = ekr_verdict(parse_spec("union:complete:2+complete:2+complete:2"), 3)
    w = rep.non_star_witness
    special = (rep.is_strict == NOT_STRICT and w is not None and len(w) == 4
               and is_intersecting(w) and not is_star_family(w))
    ok = not bad and special and seconds[2] < LIMITS[2]
    verdict(2, ok, f"{len(out[2]['rows'])} points, {len(bad)} not passing, {seconds[2]:.1f}s; "
                   f"K2+K2+K2 r=3 {rep.is_strict} with non-star family {None if w is None else list(w.sets)}")


def test_criterion_3_cycle_powers(results):
    out, seconds = results
    bad = sweep_failures(out[3])
    rep = ekr_verdict(parse_spec("cycle:6:1"), 2)
    w = rep.non_star_witness
    special = rep.is_strict == NOT_STRICT and w is not None and len(w) == 3 and not is_star_family(w)
    ok = not bad and special and seconds[3] < LIMITS[3]
    verdict(3, ok, f"{len(out[3]['rows'])} points, {len(bad)} not passing, {seconds[3]:.1f}s; "
                   f"C_6 r=2 {rep.is_strict} with {None if w is None else list(w.sets)}")


def test_criterion_4_path_powers(results):
    out, seconds = results
    bad = sweep_failures(out[4])
    rows = out[4]["rows"]
    ends = all({1, int(row["spec"].split(":")[1])} <= set(row["report"]["star_argmax"]) for row in rows)
    ok = not bad and ends and seconds[4] < LIMITS[4]
    verdict(4, ok, f"{len(rows)} points, {len(bad)} not passing, endpoints in argmax: {ends}, {seconds[4]:.1f}s")


def test_criterion_5_mixed(results):
    out, seconds = results
    bad = sweep_failures(out[5])
    ok = not bad and out[5]["rows"] and seconds[5] < LIMITS[5]
    verdict(5, ok, f"{len(out[5]['rows'])} mixed unions at r=2, {len(bad)} not passing, {seconds[5]:.1f}s")


def test_criterion_6_partition_suite(results):
    out, seconds = results
    suite = out[6]
    ok = suite["count"] == 1000 and suite["failures"] == 0 and seconds[6] < LIMITS[6]
    verdict(6, ok, f"{suite['count']} instances, {suite['decompositions']} decompositions, "
                   f"{suite['failures']} failures, {seconds[6]:.1f}s")


def test_criterion_7_star_identity(results):
    out, _ = results
    suite = out[7]
    g = path_power(7, 1)
    r2 = star_components(g, (6, 7), 1, 2)
    r3 = star_components(g, (6, 7), 1, 3)
    worked = r2.counts == (5, 4, 1, 0, 0) and r3.counts == (6, 3, 2, 0, 1) and r2.holds and r3.holds
    ok = suite["failures"] == 0 and worked
    verdict(7, ok, f"{suite['graphs']} graphs, {suite['checked']} identities, {suite['failures']} failures; "
                   f"P_7 worked instance {r2.equation()} and {r3.equation()}")


def test_criterion_8_oracle(results):
    out, _ = results
    rows = out[8]
    bad = [row for row in rows if row["oracle"] != row["solver"]]
    ok = rows and not bad
    verdict(8, ok, f"{len(rows)} (graph, r) pairs with |I| <= 18, {len(bad)} disagreements")


def test_criterion_9_path_certificate(results):
    out, _ = results
    suite = out[9]
    ok = suite["points"] > 0 and suite["failures"] == 0
    verdict(9, ok, f"{suite['points']} (n, k, r) points, {suite['failures']} failing chains")


def test_criterion_10_determinism(results):
    out, _ = results
    again, _ = compute_all(4)
    differing = [n for n in out if json.dumps(out[n], sort_keys=True) != json.dumps(again[n], sort_keys=True)]
    verdict(10, not differing, "workers 1 vs 4: " + (f"suites {differing} differ" if differing
                                                     else f"{len(out)} certificate sets byte-identical"))
