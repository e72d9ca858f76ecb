import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_graphs
from ekrlab.families import (Family, FamilyError, enumerate_independent, family_from_json, is_independent,
                             is_intersecting, is_star_family, max_star, star)
from ekrlab.graph import GraphError, cycle_power, empty_graph, parse_spec, path_power
from oracles import brute_independent, brute_star


def test_is_independent():
    assert is_independent(path_power(4, 1), (1, 3))
    assert not is_independent(path_power(4, 1), (1, 2))
    assert is_independent(path_power(7, 2), (1, 4, 7))
    with pytest.raises(GraphError):
        is_independent(path_power(4, 1), (1, 5))


def test_enumerate_independent_examples():
    assert enumerate_independent(path_power(4, 1), 2).sets == ((1, 3), (1, 4), (2, 4))
    assert enumerate_independent(path_power(5, 1), 3).sets == ((1, 3, 5),)
    assert len(enumerate_independent(path_power(4, 1), 3)) == 0


def test_star_examples():
    assert star(empty_graph(4), 1, 2).sets == ((1, 2), (1, 3), (1, 4))
    s = star(path_power(7, 1), 1, 2)
    assert s.sets == tuple((1, x) for x in range(3, 8))
    assert star(cycle_power(6, 1), 1, 2).sets == ((1, 3), (1, 4), (1, 5))


def test_max_star_examples():
    assert max_star(path_power(7, 1), 2) == (5, (1, 7))
    assert max_star(empty_graph(6), 3) == (comb(5, 2), (1, 2, 3, 4, 5, 6))
    k2x3 = parse_spec("union:complete:2+complete:2+complete:2")
    assert max_star(k2x3, 3) == (4, (1, 2, 3, 4, 5, 6))
    assert max_star(path_power(4, 1), 3) == (0, ())


def test_is_intersecting_examples():
    assert is_intersecting([(1, 3), (1, 4)])
    assert not is_intersecting([(1, 3), (2, 4)])
    tri = Family.of(2, [(1, 3), (3, 5), (1, 5)])
    assert is_intersecting(tri) and not is_star_family(tri)
    assert is_intersecting([]) and is_intersecting([(1, 2)])


def test_family_json_roundtrip():
    f = Family.of(2, [(3, 1), (1, 4), (1, 3)])
    assert f.sets == ((1, 3), (1, 4))
    assert family_from_json(json.loads(f.dumps())) == f
    assert family_from_json(f.dumps()) == f


@pytest.mark.parametrize("bad", [
    {"r": 2, "sets": [[1, 3], [1, 3]]},
    {"r": 2, "sets": [[1, 3], [1, 2]]},
    {"r": 2, "sets": [[3, 1]]},
    {"r": 2, "sets": [[1, 2, 3]]},
    {"r": 2, "sets": [[1, "a"]]},
    {"sets": []},
    [1, 2],
])
def test_family_json_rejects(bad):
    with pytest.raises(FamilyError):
        family_from_json(bad)


def test_empty_graph_counts():
    for n in range(1, 13):
        for r in range(1, n + 1):
            g = empty_graph(n)
            assert len(enumerate_independent(g, r)) == comb(n, r)
            assert len(star(g, 1, r)) == comb(n - 1, r - 1)


@settings(max_examples=150, deadline=None)
@given(small_graphs(max_n=9), st.integers(1, 4))
def test_enumeration_matches_brute_force(g, r):
    fam = enumerate_independent(g, r)
    assert list(fam.sets) == brute_independent(g, r)
    for v in g.vertices:
        s = star(g, v, r)
        assert list(s.sets) == brute_star(g, v, r)
        assert set(s.sets) <= set(fam.sets)
        assert is_intersecting(s)
    # double counting
    assert sum(len(star(g, v, r)) for v in g.vertices) == r * len(fam)


@given(st.integers(1, 12), st.integers(1, 3), st.integers(1, 6))
def test_path_max_star_at_endpoints(n, k, r):
    g = path_power(n, k)
    best = max_star(g, r)
    if len(enumerate_independent(g, r)):
        assert {1, n} <= set(best.argmax)
