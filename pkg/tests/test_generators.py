import ast

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import to_nx
from vtsep.errors import GraphError
from vtsep.generators import (PERIODIC_FAMILIES, cyclic_group, figure2_cyclic, figure2_presentation,
                              format_periodic, integer_path, ladder, make_cayley, make_circulant,
                              make_family, parse_periodic, prism, squared_path, symmetric_group,
                              torus, window)
from vtsep.ringstruct import shift_type
from vtsep.symmetry import orbit_transitivity


class TestCirculants:
    def test_cycle(self):
        g = make_circulant(6, [1, -1])
        assert g.num_edges() == 6 and all(g.degree(v) == 2 for v in range(6))

    def test_c8_squared(self):
        g = make_circulant(8, [1, -1, 2, -2])
        assert g.num_edges() == 16 and g.is_regular() and g.degree(0) == 4

    def test_directed(self):
        dg = make_circulant(7, [1, 2], directed=True)
        assert all(len(dg.adj[v]) == 2 and len(dg.in_adj[v]) == 2 for v in range(7))

    def test_undirected_needs_symmetric_connection(self):
        with pytest.raises(GraphError):
            make_circulant(7, [1, 2])


class TestCayley:
    def test_z5(self):
        g = make_cayley(cyclic_group(5), [1, 4])
        assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(5))

    def test_s3_transpositions(self):
        tbl = symmetric_group(3)
        trans = [i for i, name in enumerate(tbl.names)
                 if sum(1 for x, y in enumerate(ast.literal_eval(name)) if x != y) == 2]
        g = make_cayley(tbl, trans)
        h = to_nx(g)
        assert g.n == 6 and g.is_regular() and g.degree(0) == 3 and nx.is_connected(h)
        assert nx.is_isomorphic(h, nx.complete_bipartite_graph(3, 3))

    def test_identity_rejected(self):
        with pytest.raises(GraphError):
            make_cayley(cyclic_group(5), [0, 1, 4])

    def test_group_tables_valid(self):
        for tbl in (cyclic_group(6), symmetric_group(3)):
            tbl.check()


class TestFamilies:
    def test_prism(self):
        g = make_family("prism", 6)
        assert (g.n, g.num_edges(), g.degree(0)) == (12, 18, 3)

    @given(st.integers(3, 40))
    def test_prism_edges(self, n):
        g = prism(n)
        assert g.num_edges() == 3 * n and all(g.degree(v) == 3 for v in range(g.n))

    def test_torus(self):
        g = make_family("torus", 4, 4)
        assert g.n == 16 and g.is_regular() and g.degree(0) == 4

    def test_tree_ball(self):
        w = make_family("tree_ball", 3, 2)
        assert w.graph.n == 10 and len(w.frontier) == 6

    def test_unknown(self):
        with pytest.raises(GraphError):
            make_family("mobius", 4)
        with pytest.raises(GraphError):
            make_family("prism")

    @pytest.mark.parametrize("g", [prism(7), torus(4, 5), make_circulant(9, [1, -1, 3, -3]),
                                   make_cayley(symmetric_group(3), [1, 2]), figure2_cyclic(6)])
    def test_attached_generators_are_transitive(self, g):
        ok, _ = orbit_transitivity(g.n, g.gens, g)
        assert ok


class TestPeriodic:
    def test_ladder_window(self):
        w = window(ladder(), 5)
        assert w.graph.n == 22
        assert w.frontier == {x for x in range(22) if abs(w.layer_of[x]) == 5}
        assert len(w.frontier) == 4

    def test_path_window(self):
        w = window(integer_path(), 3)
        assert nx.is_isomorphic(to_nx(w.graph), nx.path_graph(7))
        assert {w.layer_of[x] for x in w.frontier} == {-3, 3}

    def test_squared_path_window(self):
        w = window(squared_path(), 3)
        assert {w.layer_of[x] for x in w.frontier} == {-3, -2, 2, 3}

    @pytest.mark.parametrize("name", sorted(PERIODIC_FAMILIES))
    def test_interior_degree_constant(self, name):
        p = PERIODIC_FAMILIES[name]()
        w = window(p, 6)
        degs = {w.graph.degree(x) for x in w.interior}
        assert len(degs) == 1

    @pytest.mark.parametrize("name", sorted(PERIODIC_FAMILIES))
    def test_window_nesting(self, name):
        p = PERIODIC_FAMILIES[name]()
        small, big = window(p, 4), window(p, 5)
        c = p.c
        relabel = lambda x: x + c  # layer i keeps its index, ids shift by one layer
        inner = [x for x in range(small.graph.n) if abs(small.layer_of[x]) <= 3]
        for x in inner:
            for y in inner:
                assert small.graph.has_edge(x, y) == big.graph.has_edge(relabel(x), relabel(y))

    @pytest.mark.parametrize("name", sorted(PERIODIC_FAMILIES))
    def test_format_round_trip(self, name):
        p = PERIODIC_FAMILIES[name]()
        q = parse_periodic(format_periodic(p))
        assert q.cell.adj == p.cell.adj and q.jumps == p.jumps

    def test_bad_periodic_text(self):
        with pytest.raises(GraphError):
            parse_periodic("periodic 2 1 1\n0 1\n")

    def test_figure2_is_type_two(self):
        kind, tau, transitive = shift_type(figure2_presentation())
        assert kind == 2 and transitive

    def test_ladder_is_type_one(self):
        kind, _, transitive = shift_type(ladder())
        assert kind == 1 and transitive
