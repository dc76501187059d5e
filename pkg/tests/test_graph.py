import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from boxdom.errors import IndexOutOfRange, MalformedGraph6, Oversize, UniverseMismatch
from boxdom.graph import (
    Graph,
    VertexSet,
    cartesian_product,
    closed_neighborhood,
    complete_graph,
    cycle_graph,
    layer_g,
    layer_h,
    parse_graph6,
    path_graph,
    project_g,
    to_graph6,
)


@st.composite
def graphs(draw, max_n=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def test_graph6_examples():
    k2 = parse_graph6("A_")
    assert (k2.n, k2.edges()) == (2, [(0, 1)])
    k1 = parse_graph6("@")
    assert (k1.n, k1.edge_count) == (1, 0)
    k3 = parse_graph6("Bw")
    assert k3 == complete_graph(3)
    assert to_graph6(complete_graph(1)) == "@"
    assert to_graph6(complete_graph(2)) == "A_"
    p3 = path_graph(3)
    assert parse_graph6(to_graph6(p3)) == p3


def test_graph6_header_and_whitespace():
    assert parse_graph6(">>graph6<<Bw\n") == complete_graph(3)


def test_graph6_matches_networkx_decoder(rng):
    for _ in range(100):
        g = oracles.random_graph(rng, rng.randint(1, 40))
        word = to_graph6(g)
        ref = nx.from_graph6_bytes(word.encode())
        assert oracles.from_nx(ref) == g
        assert nx.to_graph6_bytes(oracles.to_nx(g), header=False).strip().decode() == word


def test_graph6_round_trip_500_random(rng):
    for _ in range(500):
        g = oracles.random_graph(rng, rng.randint(0, 20))
        assert parse_graph6(to_graph6(g)) == g


def test_graph6_long_size_form(rng):
    g = oracles.random_graph(rng, 64, 0.3)
    word = to_graph6(g)
    assert word[0] == "~"
    assert parse_graph6(word) == g


@pytest.mark.parametrize("bad", ["", "A", "A__", "A`", " ", "Aa\x7f", "!!"])
def test_graph6_malformed(bad):
    with pytest.raises(MalformedGraph6):
        parse_graph6(bad)


def test_graph6_oversize(rng):
    word = to_graph6(oracles.random_graph(rng, 65, 0.1))
    with pytest.raises(Oversize):
        parse_graph6(word)
    assert parse_graph6(word, max_n=100).n == 65


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))
    with pytest.raises(IndexOutOfRange):
        Graph.from_edges(2, [(0, 2)])


def test_vertex_set_ops():
    a, b = VertexSet.of(5, [0, 2]), VertexSet.of(5, [2, 3])
    assert (a | b).members == (0, 2, 3)
    assert (a & b).members == (2,)
    assert (a - b).members == (0,)
    assert 2 in a and 1 not in a and len(a) == 2
    with pytest.raises(UniverseMismatch):
        a | VertexSet.of(4, [0])
    with pytest.raises(IndexOutOfRange):
        VertexSet.of(3, [3])


def test_closed_neighborhood_examples():
    assert closed_neighborhood(complete_graph(1), 0).members == (0,)
    assert closed_neighborhood(path_graph(3), 1).members == (0, 1, 2)
    assert closed_neighborhood(cycle_graph(4), 0).members == (0, 1, 3)


def test_product_examples():
    h = parse_graph6("Cr")
    p = cartesian_product(complete_graph(1), h)
    assert p.graph == h
    sq = cartesian_product(path_graph(2), path_graph(2)).graph
    assert sq.n == 4 and sq.edge_count == 4 and all(sq.degree(v) == 2 for v in range(4))
    grid = cartesian_product(path_graph(3), path_graph(3)).graph
    assert (grid.n, grid.edge_count) == (9, 3 * 2 + 3 * 2)


def test_product_cap():
    with pytest.raises(Oversize):
        cartesian_product(path_graph(5), path_graph(5), max_n=24)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_product_matches_networkx(g, h):
    p = cartesian_product(g, h)
    assert oracles.adjacency(p.graph) == oracles.product_adjacency(g, h)
    for v in range(p.n):
        gv, hv = p.coords(v)
        assert p.index(gv, hv) == v
        assert p.graph.degree(v) == g.degree(gv) + h.degree(hv)


def test_layer_examples():
    p = cartesian_product(path_graph(2), path_graph(2))
    assert layer_g(p, 0).members == (0, 1)
    assert layer_h(p, 1).members == (1, 3)
    q = cartesian_product(path_graph(3), path_graph(2))
    assert project_g(q, VertexSet.of(q.n)).members == ()
    assert project_g(q, q.set_of([(1, 0), (1, 1)])).members == (1,)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_layers_partition_and_projection_section(g, h):
    p = cartesian_product(g, h)
    for layers in ([layer_g(p, hv) for hv in range(h.n)], [layer_h(p, gv) for gv in range(g.n)]):
        seen = 0
        for s in layers:
            assert seen & s.mask == 0
            seen |= s.mask
        assert seen == p.graph.full_mask
    for hv in range(h.n):
        assert project_g(p, layer_g(p, hv)) == VertexSet.full(g.n)
