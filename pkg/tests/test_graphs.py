import pytest
from hypothesis import given, settings, strategies as st

from zforcing import (
    Digraph,
    GraphError,
    GraphParseError,
    UndirectedGraph,
    gen_circulant,
    gen_complete,
    gen_cycle,
    gen_path,
    gen_random_digraph,
    gen_random_ditree,
    is_ditree,
    lift_undirected,
    parse_edge_list,
    reachable_from,
    to_edge_list,
)
from conftest import FIG1_ARCS, FIG1_TEXT
from oracles import union_find_is_tree


def test_parse_simple_directed():
    G = parse_edge_list("1 2\n2 3", directed=True)
    assert G == Digraph(3, frozenset({(1, 2), (2, 3)}))


def test_parse_figure_graph():
    G = parse_edge_list(FIG1_TEXT)
    assert G.n == 6
    assert G.arcs == frozenset(FIG1_ARCS)


def test_parse_header_and_crlf():
    G = parse_edge_list("n 5\r\n1 2  # trailing\r\n\r\n3 1\r\n")
    assert G.n == 5
    assert G.arcs == {(1, 2), (3, 1)}


@pytest.mark.parametrize(
    "text, message",
    [
        ("1 1", "self-loop at line 1"),
        ("1 2\n1 2", "duplicate arc at line 2"),
        ("1 2\n0 3", "vertex index 0 at line 2"),
        ("1 2\n2 x", "malformed line at line 2"),
        ("1 2 3", "malformed line at line 1"),
        ("n 2\n1 3", "exceeds header count 2 at line 2"),
    ],
)
def test_parse_errors_name_the_line(text, message):
    with pytest.raises(GraphParseError, match=message):
        parse_edge_list(text)


def test_parse_undirected_duplicate_in_reverse():
    with pytest.raises(GraphParseError, match="duplicate edge at line 2"):
        parse_edge_list("1 2\n2 1", directed=False)


def test_digraph_invariants():
    with pytest.raises(GraphError):
        Digraph(3, frozenset({(1, 1)}))
    with pytest.raises(GraphError):
        Digraph(3, frozenset({(1, 4)}))
    with pytest.raises(GraphError):
        Digraph(0)


def test_lift_single_edge():
    G = lift_undirected(UndirectedGraph(2, frozenset({(1, 2)})))
    assert G.arcs == {(1, 2), (2, 1)}


def test_lift_path_and_cycle():
    P4 = lift_undirected(gen_path(4))
    assert P4.arcs == {(1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3)}
    assert len(lift_undirected(gen_cycle(5)).arcs) == 10


def test_family_edge_counts():
    assert gen_path(4).edges == {(1, 2), (2, 3), (3, 4)}
    assert len(gen_cycle(5).edges) == 5
    assert len(gen_complete(4).edges) == 6


def test_circulant_10_123_is_6_regular():
    H = gen_circulant(10, {1, 2, 3})
    degrees = [sum(v in e for e in H.edges) for v in range(1, 11)]
    assert degrees == [6] * 10
    assert len(H.edges) == 30


def test_circulant_special_cases():
    assert gen_circulant(5, {1}) == gen_cycle(5)
    assert gen_circulant(4, {1, 2}) == gen_complete(4)
    with pytest.raises(GraphError):
        gen_circulant(10, {6})


@pytest.mark.parametrize("n", range(3, 12))
def test_circulant_unit_offset_is_cycle(n):
    assert gen_circulant(n, {1}).edges == gen_cycle(n).edges


def test_family_minimums():
    with pytest.raises(GraphError):
        gen_cycle(2)
    with pytest.raises(GraphError):
        gen_path(0)


def test_random_digraph_extremes():
    assert gen_random_digraph(5, 0.0, 3).arcs == frozenset()
    assert len(gen_random_digraph(5, 1.0, 3).arcs) == 20


def test_random_digraph_is_reproducible():
    assert gen_random_digraph(7, 0.4, 11) == gen_random_digraph(7, 0.4, 11)
    assert gen_random_ditree(9, 11) == gen_random_ditree(9, 11)


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("orientation", ["any", "out"])
def test_random_ditree_is_tree(seed, orientation):
    T = gen_random_ditree(6 + seed % 5, seed, orientation)
    assert len(T.arcs) == T.n - 1
    assert union_find_is_tree(T.n, T.arcs)
    assert is_ditree(T)
    if orientation == "out":
        assert T.sources() == {1}


def test_is_ditree_rejects_antiparallel_and_forests():
    assert not is_ditree(Digraph(2, frozenset({(1, 2), (2, 1)})))
    assert not is_ditree(Digraph(4, frozenset({(1, 2), (3, 4)})))
    assert is_ditree(Digraph(1))


def test_neighbourhood_queries(fig1):
    assert set(fig1.out_neighbors(5)) == {1, 2, 4, 6}
    assert fig1.in_degree(5) == 0
    assert fig1.in_degree(1) == 2
    assert reachable_from(fig1, {1}) == {1, 2, 3, 4}
    assert reachable_from(fig1, {5}) == set(range(1, 7))
    with pytest.raises(GraphError):
        fig1.out_neighbors(7)


def test_laplacian_conventions():
    G = lift_undirected(gen_path(3))
    L = G.laplacian()
    assert L.tolist() == [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
    one_arc = Digraph(2, frozenset({(1, 2)}))
    assert one_arc.adjacency().tolist() == [[0, 0], [1, 0]]


@st.composite
def digraphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    arcs = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Digraph(n, frozenset(arcs))


@settings(max_examples=200)
@given(digraphs())
def test_edge_list_round_trip(G):
    assert parse_edge_list(to_edge_list(G)) == G


@settings(max_examples=100)
@given(digraphs())
def test_lift_is_symmetric(G):
    H = UndirectedGraph(G.n, frozenset(G.arcs))
    lifted = lift_undirected(H)
    assert all((j, i) in lifted.arcs for i, j in lifted.arcs)
    assert lifted.is_symmetric()
    assert parse_edge_list(to_edge_list(H), directed=False) == H
