import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph_and_sets
from vtsep.errors import GraphError
from vtsep.generators import (cyclic_group, complete_graph, cycle, ladder, make_circulant, prism,
                              torus, tree_ball)
from vtsep.graph import Graph
from vtsep.verify import (FreeGroup, IntegerGroup, check_eulerian, cor19_check, diam_depth_check,
                          diam_depth_part2, diameter_threshold, eulerian_cor110, get_ring_check,
                          growth_cor17, main_dichotomy, scan_main, thm3_check)


@pytest.fixture(scope="module")
def c600():
    return cycle(600)


class TestMainDichotomy:
    def test_threshold(self):
        assert diameter_threshold(2) == 279

    def test_long_interval_is_ring_case(self, c600):
        o = main_dichotomy(c600, None, range(100))
        assert o.case == "ring_interval" and (o.s, o.t, o.excess) == (1, 1, 0)
        assert o.depth == 50 and o.k == 2

    def test_single_vertex_is_both(self, c600):
        o = main_dichotomy(c600, None, {7})
        assert o.cases == ("shallow", "ring_interval")

    def test_preconditions(self, c600):
        assert main_dichotomy(c600, None, range(301)).case == "precondition_failed"
        assert main_dichotomy(c600, None, {0, 1, 5}).case == "precondition_failed"
        o = main_dichotomy(cycle(40), None, range(5))
        assert o.case == "precondition_failed" and "diameter" in o.reason

    def test_relaxed_diameter(self):
        o = main_dichotomy(prism(20), None, {0, 1, 2, 3}, relax_diameter=True)
        assert o.relaxed and o.case in ("ring_interval", "shallow+ring_interval", "shallow", "unsupported")

    def test_directed_rejected(self):
        with pytest.raises(GraphError):
            main_dichotomy(make_circulant(7, [1, 2], directed=True), None, {0})

    def test_scan(self, c600):
        summ = scan_main(c600, None, 2)
        assert summ.ok and summ.candidates and not summ.exhausted
        assert summ.counts["VIOLATION"] == 0
        assert summ.tsv().splitlines()[0].startswith("candidate_id\tcase")

    def test_scan_budget(self, c600):
        summ = scan_main(c600, None, 2, budget=5)
        assert summ.exhausted and len(summ.rows) == 5


class TestLemmaChecks:
    @given(graph_and_sets(connected=True))
    @settings(max_examples=80)
    def test_diam_depth(self, data):
        g, A = data
        res = diam_depth_check(g, A)
        if res is not None:
            assert res[2]

    def test_diam_depth_cycle(self):
        assert diam_depth_check(cycle(30), range(10)) == (9, 22, True)

    def test_part2_not_applicable(self):
        assert diam_depth_part2(cycle(30), range(10), 1, 2, 1, 2) is None

    def test_get_ring(self, c600):
        cert, complete = get_ring_check(c600, None, range(200))
        assert complete and cert.st == 1 and cert.cohesive_q <= 2
        assert get_ring_check(c600, None, {0}) is None


class TestGrowth:
    def test_torus(self):
        rep = growth_cor17(torus(61, 61), 10)
        assert rep.growth[10] == 221 and rep.growth_ok and rep.holds

    def test_tree(self):
        rep = growth_cor17(tree_ball(3, 12), 8)
        assert rep.growth_ok and rep.holds

    def test_ladder_needs_ring(self):
        rep = growth_cor17(ladder(), 12)
        assert not rep.growth_ok and rep.ring is not None and (rep.ring.s, rep.ring.t) == (2, 1)
        assert rep.holds and rep.clause

    def test_cycle(self):
        rep = growth_cor17(cycle(200), 20)
        assert rep.first_failure == 4 and rep.ring.st == 1 and rep.holds

    def test_frontier_contamination(self):
        with pytest.raises(GraphError, match="frontier"):
            growth_cor17(tree_ball(3, 4), 6)


class TestEulerian:
    def test_not_eulerian(self):
        with pytest.raises(GraphError, match="not Eulerian"):
            check_eulerian(Graph.from_edges(3, [(0, 1), (0, 2)], directed=True))
        with pytest.raises(GraphError, match="directed"):
            check_eulerian(cycle(5))

    def test_large_circulant(self):
        dg = make_circulant(5100, [1, 2], directed=True)
        o = eulerian_cor110(dg, None, range(10))
        assert o.route == "undirected" and o.chain_ok
        assert o.case == "small+ring_interval" and (o.s, o.t) == (1, 2)

    def test_small_diameter(self):
        dg = make_circulant(101, [1, 2], directed=True)
        assert eulerian_cor110(dg, None, range(10)).case == "precondition_failed"


class TestCor19:
    def test_cycle(self):
        o = cor19_check(cycle(100), None, 2)
        assert o.status == "ok" and o.outcomes == ("i", "ii")

    def test_k5(self):
        o = cor19_check(complete_graph(5), None, 4)
        assert o.outcomes == ("ii",)

    def test_k4(self):
        o = cor19_check(complete_graph(4), None, 4)
        assert o.outcomes == ("iii",) and o.td_width == 3

    def test_budget(self):
        o = cor19_check(torus(6, 6), None, 6, budget=1)
        assert o.status in ("ok", "inconclusive")


class TestThm3:
    def test_integers(self):
        rep = thm3_check(IntegerGroup(), {-1, 0, 1}, range(100))
        assert rep.hypothesis and rep.status == "ok" and rep.N_size == 1 and rep.quotient == "cyclic"

    def test_integers_hypothesis_fails(self):
        rep = thm3_check(IntegerGroup(), {-1, 0, 1}, {0, 10, 20, 30})
        assert not rep.hypothesis and rep.status == "hypothesis fails"

    def test_free_group_ball(self):
        F = FreeGroup(2)
        B = {(), (1,), (-1,), (2,), (-2,)}
        rep = thm3_check(F, B, F.ball(3))
        assert not rep.hypothesis

    def test_missing_identity(self):
        with pytest.raises(GraphError, match="identity"):
            thm3_check(IntegerGroup(), {-1, 1}, range(10))

    def test_not_generating(self):
        with pytest.raises(GraphError):
            thm3_check(IntegerGroup(), {-2, 0, 2}, range(10))

    def test_finite_cyclic(self):
        rep = thm3_check(cyclic_group(200), {0, 1, 199}, range(100))
        assert rep.finite_group and rep.status == "ok"

    @given(st.integers(1, 400))
    @settings(max_examples=30)
    def test_integer_intervals(self, n):
        rep = thm3_check(IntegerGroup(), {-1, 0, 1}, range(n))
        assert rep.size_BA == n + 2
        assert rep.hypothesis == (64 < n)
