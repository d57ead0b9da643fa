from hypothesis import given, settings

from conftest import graph_and_sets
from vtsep.generators import cycle
from vtsep.uncrossing import REGION_NAMES, regions, uncrossing_report


def test_overlapping_intervals():
    dec = regions(cycle(12), range(6), range(3, 9))
    expect = dict(P={3, 4, 5}, Q={6}, S={7, 8}, T={2}, U=set(), W={9}, X={0, 1}, Y={11}, Z={10})
    assert {k: set(v) for k, v in dec.as_dict().items()} == expect


def test_identical_sets():
    dec = regions(cycle(12), range(6), range(6))
    assert dec.P == set(range(6)) and dec.U == {6, 11}
    assert not (dec.Q or dec.S or dec.T or dec.W or dec.X or dec.Y)
    assert dec.Z == set(range(7, 11))


def test_far_apart_sets():
    dec = regions(cycle(20), {0, 1}, {10, 11})
    assert not (dec.P or dec.Q or dec.T or dec.U)
    assert dec.X == {0, 1} and dec.S == {10, 11}
    assert dec.Y == {2, 19} and dec.W == {9, 12}


def test_report_examples():
    rep = uncrossing_report(cycle(12), range(6), range(3, 9))
    assert rep.lhs[:2] == (4, 4) and rep.rhs[:2] == (4, 4)
    assert rep.iii_applicable and rep.iii_value == 1 and rep.iii_k == 2 and rep.ok
    same = uncrossing_report(cycle(12), range(6), range(6))
    assert same.lhs[0] == same.rhs[0] == 4
    far = uncrossing_report(cycle(20), {0, 1}, {10, 11})
    assert far.lhs[1] == far.rhs[1] == 4


@given(graph_and_sets(count=2, max_n=14))
@settings(max_examples=300)
def test_inequalities_hold(data):
    g, A1, A2 = data
    rep = uncrossing_report(g, A1, A2)
    assert rep.ok, rep


@given(graph_and_sets(count=2, max_n=12))
def test_regions_partition_and_swap(data):
    g, A1, A2 = data
    dec = regions(g, A1, A2)
    parts = [getattr(dec, name) for name in REGION_NAMES]
    assert sum(len(p) for p in parts) == g.n
    assert frozenset().union(*parts) == frozenset(range(g.n))
    assert regions(g, A2, A1) == dec.swapped()
