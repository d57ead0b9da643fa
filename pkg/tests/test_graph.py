import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_boundary, brute_edge_cut, graph_and_sets, graphs, to_nx
from vtsep.errors import GraphError
from vtsep.generators import cycle, make_circulant, petersen, torus, tree_ball
from vtsep.graph import (Graph, ball, ball_growth, bfs_distances, boundary, boundary_profile,
                         check_connected_with_boundary, depth, diameter, diameter_of_set,
                         format_graph, format_vertex_set, parse_graph, parse_vertex_set)


class TestDistances:
    def test_cycle_antipode(self):
        assert bfs_distances(cycle(6), [0])[3] == 3

    def test_two_sources(self):
        d = bfs_distances(cycle(6), [0, 3])
        assert d[1] == 1 and d[2] == 1

    def test_unreachable_is_none(self):
        g = Graph.from_edges(2, [])
        assert bfs_distances(g, [0])[1] is None

    @given(graphs(max_n=10))
    def test_matches_networkx(self, g):
        ours = bfs_distances(g, [0])
        ref = nx.single_source_shortest_path_length(to_nx(g), 0)
        assert {v: d for v, d in enumerate(ours) if d is not None} == ref


class TestBoundary:
    def test_c6(self):
        prof = boundary_profile(cycle(6), {0, 1})
        assert prof.vertex_boundary == {2, 5} and prof.edge_cut_size == 2

    def test_c12_interval(self):
        assert boundary(cycle(12), {3, 4, 5}) == {2, 6}

    def test_directed_sides(self):
        dg = make_circulant(7, [1, 2], directed=True)
        prof = boundary_profile(dg, {0})
        assert prof.out_boundary == {1, 2}
        assert prof.in_boundary == {5, 6}

    @given(graph_and_sets())
    def test_against_brute_force(self, data):
        g, A = data
        prof = boundary_profile(g, A)
        assert prof.vertex_boundary == brute_boundary(g, A)
        assert prof.edge_cut_size == brute_edge_cut(g, A)

    @given(graph_and_sets())
    def test_size_chain(self, data):
        g, A = data
        prof = boundary_profile(g, A)
        assert len(prof.vertex_boundary) <= prof.edge_cut_size <= sum(g.degree(v) for v in A)

    def test_unknown_vertex_rejected(self):
        with pytest.raises(GraphError):
            boundary(cycle(5), {7})


class TestDepthAndDiameter:
    def test_depth_c9(self):
        assert depth(cycle(9), range(5)) == 3

    def test_depth_singleton(self):
        assert depth(petersen(), {4}) == 1

    def test_depth_torus_ball(self):
        g = torus(7, 7)
        assert depth(g, ball(g, 24, 2)) == 3

    @given(graph_and_sets(connected=True))
    def test_depth_one_iff_all_touch_outside(self, data):
        g, A = data
        if len(A) == g.n or not boundary(g, A):
            return
        touch = all(any(w not in A for w in g.adj[v]) for v in A)
        assert (depth(g, A) == 1) == touch

    def test_set_diameters(self):
        assert diameter_of_set(cycle(10), range(10)) == 5
        assert diameter_of_set(cycle(12), {0, 1, 2}) == 2
        assert diameter_of_set(petersen(), range(10)) == 2

    def test_diameter_matches_networkx(self):
        for g in (cycle(11), petersen(), torus(5, 4)):
            assert diameter(g) == nx.diameter(to_nx(g))

    @given(graph_and_sets(connected=True))
    @settings(max_examples=60)
    def test_diam_depth_inequality(self, data):
        g, A = data
        dA = boundary(g, A)
        if not dA or not check_connected_with_boundary(g, A):
            return
        assert diameter_of_set(g, A) < len(dA) * (2 * depth(g, A) + 1)


class TestGrowth:
    def test_cycle(self):
        assert ball_growth(cycle(10), 0, 6) == [1, 3, 5, 7, 9, 10, 10]

    def test_torus(self):
        assert ball_growth(torus(9, 9), 0, 2) == [1, 5, 13]

    def test_tree(self):
        assert ball_growth(tree_ball(3, 4).graph, 0, 2) == [1, 4, 10]

    @given(graphs(max_n=12), st.integers(0, 5))
    def test_monotone_and_bounded(self, g, kmax):
        b = ball_growth(g, 0, kmax)
        maxdeg = max((g.degree(v) for v in range(g.n)), default=0)
        for x, y in zip(b, b[1:]):
            assert x <= y <= x * (1 + maxdeg)


class TestConnectedWithBoundary:
    def test_examples(self):
        g = cycle(12)
        assert check_connected_with_boundary(g, {0, 1, 2})
        assert not check_connected_with_boundary(g, {0, 1, 6, 7})
        assert check_connected_with_boundary(g, {0, 1, 3, 4})


class TestFormats:
    @given(graphs(max_n=10))
    def test_round_trip(self, g):
        h = parse_graph(format_graph(g))
        assert h.adj == g.adj and h.directed == g.directed

    def test_directed_round_trip(self):
        dg = make_circulant(7, [1, 2], directed=True)
        assert parse_graph(format_graph(dg)).adj == dg.adj

    @pytest.mark.parametrize("text", [
        "graph 3 1 undirected\n0 0\n",
        "graph 3 2 undirected\n0 1\n1 0\n",
        "graph 3 1 undirected\n0 5\n",
        "graph 3 2 undirected\n0 1\n",
        "grph 3 0 undirected\n",
    ])
    def test_rejects_bad_input(self, text):
        with pytest.raises(GraphError):
            parse_graph(text)

    def test_vertex_set(self):
        g = cycle(5)
        assert parse_vertex_set(format_vertex_set({3, 1}), g) == {1, 3}
        with pytest.raises(GraphError):
            parse_vertex_set("1 1", g)
        with pytest.raises(GraphError):
            parse_vertex_set("9", g)
