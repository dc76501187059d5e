import pytest
from hypothesis import given, settings, strategies as st

import oracles
from boxdom.domination import (
    dominates,
    enumerate_m,
    gamma_bruteforce,
    gamma_exact,
    is_dominating,
    is_minimal_dominating_containing,
    minimum_dominating_sets,
    private_neighbors,
)
from boxdom.errors import NotInSet, Oversize
from boxdom.graph import VertexSet, complete_graph, cycle_graph, empty_graph, path_graph, star_graph
from test_graph import graphs


def vs(g, members):
    return VertexSet.of(g.n, members)


def test_is_dominating_examples():
    p3 = path_graph(3)
    assert is_dominating(p3, vs(p3, [1]))
    assert not is_dominating(p3, vs(p3, [0]))
    assert is_dominating(p3, VertexSet.full(3))


@pytest.mark.parametrize("n", range(1, 8))
def test_gamma_complete(n):
    assert gamma_exact(complete_graph(n)).gamma == 1


def test_gamma_small_examples():
    assert gamma_exact(cycle_graph(4)).gamma == oracles.gamma(oracles.adjacency(cycle_graph(4))) == 2
    assert gamma_bruteforce(complete_graph(1)) == 1
    assert gamma_bruteforce(path_graph(4)) == 2
    assert gamma_bruteforce(cycle_graph(6)) == 2
    assert gamma_exact(empty_graph(5)).gamma == 5
    assert gamma_exact(star_graph(6)).gamma == 1
    assert gamma_exact(empty_graph(0)).gamma == 0


def test_bruteforce_cap():
    with pytest.raises(Oversize):
        gamma_bruteforce(path_graph(17))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=10))
def test_gamma_result_invariants(g):
    res = gamma_exact(g)
    assert len(res.witness) == res.gamma
    assert is_dominating(g, res.witness)
    assert res.gamma == oracles.gamma(oracles.adjacency(g))


def test_gamma_large_path_and_cycle():
    assert gamma_exact(path_graph(40)).gamma == 14
    assert gamma_exact(cycle_graph(30)).gamma == 10


def test_private_neighbor_examples():
    p3, k3 = path_graph(3), complete_graph(3)
    assert private_neighbors(p3, vs(p3, [1]), 1).members == (0, 2)
    assert private_neighbors(p3, vs(p3, [0, 1]), 1).members == (2,)
    assert private_neighbors(k3, vs(k3, [0, 1]), 0).members == ()
    with pytest.raises(NotInSet):
        private_neighbors(p3, vs(p3, [0]), 1)


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=9), st.data())
def test_private_neighbor_characterisation(g, data):
    adj = oracles.adjacency(g)
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    v = data.draw(st.sampled_from(sorted(s)))
    pn = private_neighbors(g, vs(g, s), v)
    assert set(pn) == oracles.private_nbrs(adj, s, v)
    if oracles.dominates(adj, s):
        removable = oracles.dominates(adj, s - {v})
        assert (not removable) == (bool(pn) or not adj[v] & s)


def test_membership_examples():
    p3 = path_graph(3)
    assert is_minimal_dominating_containing(p3, vs(p3, [1]), vs(p3, []))
    assert is_minimal_dominating_containing(p3, vs(p3, [0, 1]), vs(p3, [0]))
    assert not is_minimal_dominating_containing(p3, vs(p3, [0, 1]), vs(p3, []))
    # x outside d is a plain "no"
    assert not is_minimal_dominating_containing(p3, vs(p3, [1]), vs(p3, [0]))


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=8), st.data())
def test_membership_matches_definition(g, data):
    d = data.draw(st.sets(st.integers(0, g.n - 1)))
    x = data.draw(st.sets(st.sampled_from(sorted(d)))) if d else set()
    adj = oracles.adjacency(g)
    assert is_minimal_dominating_containing(g, vs(g, d), vs(g, x)) == oracles.minimal_containing(adj, d, x)


def test_enumerate_m_examples():
    p3, k2 = path_graph(3), complete_graph(2)
    for g in (p3, k2, cycle_graph(5)):
        assert enumerate_m(g, VertexSet.full(g.n)) == [VertexSet.full(g.n)]
    found = {s.members for s in enumerate_m(p3, vs(p3, []))}
    assert {(1,), (0, 2)} <= found
    assert found == {tuple(sorted(s)) for s in oracles.all_minimal_containing(oracles.adjacency(p3), set())}
    assert enumerate_m(k2, vs(k2, [0])) == [vs(k2, [0])]


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8), st.data())
def test_enumerate_m_matches_oracle(g, data):
    x = data.draw(st.sets(st.integers(0, g.n - 1)))
    got = [s.members for s in enumerate_m(g, vs(g, x))]
    assert got == sorted(got)
    assert len(set(got)) == len(got)
    want = {tuple(sorted(s)) for s in oracles.all_minimal_containing(oracles.adjacency(g), x)}
    assert set(got) == want


def test_enumerate_m_nonempty_500(rng):
    for _ in range(500):
        g = oracles.random_graph(rng, rng.randint(1, 12))
        x = vs(g, [v for v in range(g.n) if rng.random() < 0.3])
        first = enumerate_m(g, x, limit=1)
        assert len(first) == 1
        assert is_minimal_dominating_containing(g, first[0], x)


def test_enumerate_m_cap():
    with pytest.raises(Oversize):
        enumerate_m(path_graph(21), VertexSet.of(21))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=10), st.data())
def test_superset_of_dominating_is_dominating(g, data):
    d = gamma_exact(g).witness
    extra = data.draw(st.sets(st.integers(0, g.n - 1)))
    assert dominates(g, d.mask | vs(g, extra).mask)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_minimum_sets_match_bruteforce(g):
    got = [set(s) for s in minimum_dominating_sets(g)]
    assert [s.members for s in minimum_dominating_sets(g)] == sorted(s.members for s in minimum_dominating_sets(g))
    assert sorted(map(sorted, got)) == sorted(map(sorted, oracles.minimum_sets(oracles.adjacency(g))))


def test_c4_minimum_sets_are_all_pairs():
    assert [s.members for s in minimum_dominating_sets(cycle_graph(4))] == [
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)
    ]
