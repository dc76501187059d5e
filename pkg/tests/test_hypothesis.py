import pytest
from hypothesis import given, settings, strategies as st

import oracles
from boxdom.domination import dominates, minimum_dominating_sets
from boxdom.errors import NotDominating
from boxdom.graph import VertexSet, cartesian_product, complete_graph, cycle_graph, layer_g, layer_h, path_graph
from boxdom.harness import enumerate_minimum_dominating_sets
from boxdom.hypothesis import (
    LayerProjections,
    assign_layers,
    classify,
    find_k_cover,
    find_minimum_cover,
    layer_projections,
    layers_admissible_for,
    proper_two_covers,
)
from test_graph import graphs


def test_layer_projection_examples():
    p = cartesian_product(path_graph(3), path_graph(2))
    assert [s.members for s in layer_projections(p, VertexSet.of(p.n)).sets] == [(), ()]
    assert [s.members for s in layer_projections(p, p.set_of([(1, 0), (1, 1)])).sets] == [(1,), (1,)]
    assert layer_projections(p, layer_g(p, 1))[1] == VertexSet.full(3)


def test_admissible_examples():
    g = path_graph(3)
    empty = LayerProjections(3, (0, 0, 0, 0))
    assert layers_admissible_for(g, VertexSet.of(3, [0, 2]), empty) == frozenset(range(4))
    assert layers_admissible_for(g, VertexSet.of(3, [1]), LayerProjections(3, (0b010,))) == {0}
    assert layers_admissible_for(g, VertexSet.of(3, [1]), LayerProjections(3, (0b001,))) == frozenset()
    with pytest.raises(NotDominating):
        layers_admissible_for(g, VertexSet.of(3, [0]), empty)


def test_equal_layers_give_one_cover():
    g = path_graph(4)
    proj = LayerProjections(4, (0b0010,) * 3)
    cover = find_k_cover(g, proj, 1)
    assert cover is not None
    assert layers_admissible_for(g, cover[0], proj) == {0, 1, 2}


def test_p4_by_p2_needs_two_sets():
    p = cartesian_product(path_graph(4), path_graph(2))
    found = []
    for d in enumerate_minimum_dominating_sets(p):
        proj = layer_projections(p, d)
        if find_k_cover(p.g, proj, 1) is None and find_k_cover(p.g, proj, 2) is not None:
            found.append(d)
    assert found
    for d in found:
        proj = layer_projections(p, d)
        s1, s2 = find_k_cover(p.g, proj, 2)
        owners = assign_layers(p.g, [s1, s2], proj)
        assert -1 not in owners and set(owners) == {0, 1}


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=5), graphs(max_n=4), st.data())
def test_n_h_sets_always_suffice(g, h, data):
    p = cartesian_product(g, h)
    d = VertexSet.of(p.n, data.draw(st.sets(st.integers(0, p.n - 1))))
    proj = layer_projections(p, d)
    assert find_k_cover(g, proj, h.n) is not None


def test_minimum_cover_examples():
    g, h = path_graph(3), path_graph(4)
    p = cartesian_product(g, h)
    column = layer_h(p, 1)
    assert find_minimum_cover(g, layer_projections(p, column), 1) == [VertexSet.of(3, [1])]

    c4 = cycle_graph(4)
    p = cartesian_product(c4, c4)
    mins = {s.mask for s in minimum_dominating_sets(c4)}
    assert len(mins) == 6
    for d in enumerate_minimum_dominating_sets(p)[:40]:
        cover = find_minimum_cover(c4, layer_projections(p, d), 4)
        if cover is not None:
            assert {s.mask for s in cover} <= mins

    g = path_graph(4)
    proj = LayerProjections(4, (0b1111, 0b0001))
    assert all(find_minimum_cover(g, proj, k) is None for k in range(1, 5))


def test_classify_examples():
    for h in (path_graph(3), cycle_graph(4), complete_graph(2)):
        p = cartesian_product(complete_graph(1), h)
        for d in enumerate_minimum_dominating_sets(p):
            rep = classify(p, d)
            assert rep.theorem1 == [VertexSet.of(1, [0])]
    p = cartesian_product(path_graph(3), path_graph(2))
    rep = classify(p, p.set_of([(1, 0), (1, 1)]))
    assert rep.theorem1 == [VertexSet.of(3, [1])]
    assert rep.flags()["theorem_main_2sets"]


def test_p4_by_p4_all_minimum_sets():
    p = cartesian_product(path_graph(4), path_graph(4))
    sets = enumerate_minimum_dominating_sets(p)
    assert sets
    for d in sets:
        rep = classify(p, d, ks=(1, 2, 3, 4))
        assert rep.k_cover[4] is not None
        assert rep.conjecture1 is not None


def _check_cover(g, proj, sets):
    adj = oracles.adjacency(g)
    for x in proj.sets:
        assert any(oracles.minimal_containing(adj, set(s), set(x)) for s in sets)


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=4), graphs(max_n=3), st.data())
def test_classify_against_oracle(g, h, data):
    p = cartesian_product(g, h)
    d = VertexSet.of(p.n, data.draw(st.sets(st.integers(0, p.n - 1))))
    if not dominates(p.graph, d.mask):
        with pytest.raises(NotDominating):
            classify(p, d)
        return
    rep = classify(p, d, ks=(1, 2, 3))
    proj = rep.projections
    assert [set(x) for x in proj.sets] == [set(x) for x in oracles.layer_projection_sets(g.n, h.n, set(d))]
    want = oracles.min_cover_size(oracles.adjacency(g), [frozenset(x) for x in proj.sets])
    assert rep.min_cover_k == want
    for k, cover in rep.k_cover.items():
        assert (cover is not None) == (k >= want)
        if cover is not None:
            assert len(cover) == k
            _check_cover(g, proj, cover)
    # monotone in k, and the one/two-set and minimum/minimal implications
    flags = [rep.k_cover[k] is not None for k in sorted(rep.k_cover)]
    assert flags == sorted(flags)
    f = rep.flags()
    assert not f["theorem1"] or f["theorem_main_2sets"]
    assert not f["corollary2sets"] or f["theorem_main_2sets"]
    if rep.corollary2sets is not None:
        gamma_g = oracles.gamma(oracles.adjacency(g))
        assert all(len(s) == gamma_g for s in rep.corollary2sets)
        _check_cover(g, proj, rep.corollary2sets)
    assert classify(p, d, ks=(1, 2, 3)).to_dict() == rep.to_dict()


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=5), graphs(max_n=3), st.data())
def test_proper_two_covers_are_proper(g, h, data):
    p = cartesian_product(g, h)
    d = VertexSet.of(p.n, data.draw(st.sets(st.integers(0, p.n - 1))) | set(range(0, p.n, 2)))
    if not dominates(p.graph, d.mask):
        return
    proj = layer_projections(p, d)
    full = frozenset(range(h.n))
    for s1, s2 in proper_two_covers(g, proj):
        t1, t2 = layers_admissible_for(g, s1, proj), layers_admissible_for(g, s2, proj)
        assert t1 | t2 == full and t1 != full and t2 != full
