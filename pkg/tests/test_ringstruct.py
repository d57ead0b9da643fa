import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vtsep.errors import CertificateError, GraphError, SymmetryError
from vtsep.generators import (cycle, figure2_presentation, integer_path, ladder, make_circulant,
                              petersen, prism, squared_path)
from vtsep.ringstruct import (CyclicSystem, _system_orders, cyclic_orders, detect_periodic_ring,
                              detect_ring, interval_cover, kappa_infinity, periodic_ring,
                              ring_candidates, verify_cyclic_system, verify_ring_like)
from vtsep.symmetry import BlockSystem, enumerate_block_systems, find_automorphisms


def singletons(n):
    return BlockSystem.from_labels(list(range(n)))


def prism_rungs(n):
    return BlockSystem.from_labels([v // 2 for v in range(2 * n)])


class TestCyclicSystem:
    def test_cycle_identity_order(self):
        cyc = verify_cyclic_system(cycle(10), singletons(10), range(10))
        cert = verify_ring_like(cycle(10), cyc)
        assert (cert.s, cert.t, cert.tight, cert.cohesive_q) == (1, 1, True, 1)

    def test_step_three_order(self):
        g = cycle(10)
        order = [(3 * i) % 10 for i in range(10)]
        cert = verify_ring_like(g, verify_cyclic_system(g, singletons(10), order))
        assert cert.t == 3 and cert.tight

    def test_broken_order(self):
        with pytest.raises(CertificateError, match="breaks the order"):
            verify_cyclic_system(cycle(6), singletons(6), [0, 2, 1, 3, 4, 5])

    def test_order_not_a_permutation(self):
        with pytest.raises(CertificateError):
            verify_cyclic_system(cycle(6), singletons(6), [0, 1, 2, 3, 4, 4])

    def test_prism_rungs(self):
        g = prism(12)
        cert = verify_ring_like(g, verify_cyclic_system(g, prism_rungs(12), range(12)))
        assert (cert.s, cert.t, cert.tight, cert.cohesive_q) == (2, 1, True, 2)

    def test_longer_jumps(self):
        g = make_circulant(12, [1, -1, 3, -3])
        cert = verify_ring_like(g, verify_cyclic_system(g, singletons(12), range(12)))
        assert cert.t == 3 and cert.tight
        h = make_circulant(12, [1, -1, 2, -2, 3, -3])
        cert = verify_ring_like(h, verify_cyclic_system(h, singletons(12), range(12)))
        assert cert.t == 3 and cert.tight and cert.cohesive_q == 1


class TestOrders:
    @given(st.integers(3, 40))
    @settings(max_examples=30)
    def test_cycle_orders_are_units(self, m):
        from math import gcd
        rot = [tuple((i + 1) % m for i in range(m))]
        steps = sorted(min(o[1], m - o[1]) for o in cyclic_orders(m, rot))
        assert steps == [b for b in range(1, m // 2 + 1) if gcd(b, m) == 1]

    @pytest.mark.parametrize("g", [cycle(12), prism(9), make_circulant(15, [1, -1, 4, -4]),
                                   make_circulant(16, [1, -1, 7, -7])])
    def test_fast_path_agrees(self, g):
        for sys_ in enumerate_block_systems(g.n, g.gens, complete=True):
            if len(sys_.blocks) < 3:
                continue
            bg = [sys_.block_action(p) for p in g.gens]
            fast = {frozenset(zip(o, o[1:] + o[:1])) | frozenset(zip(o[1:] + o[:1], o))
                    for o in _system_orders(g, sys_, bg)}
            slow = {frozenset(zip(o, o[1:] + o[:1])) | frozenset(zip(o[1:] + o[:1], o))
                    for o in cyclic_orders(len(sys_.blocks), bg)}
            assert fast == slow


class TestDetect:
    def test_cycle(self):
        cert = detect_ring(cycle(100))
        assert (cert.s, cert.t, cert.tight) == (1, 1, True)

    def test_prism(self):
        cert = detect_ring(prism(30))
        assert (cert.s, cert.t, cert.tight) == (2, 1, True)

    def test_petersen_has_none(self):
        g = petersen()
        gens = find_automorphisms(g).generators
        assert detect_ring(g, gens, complete=True) is None
        assert ring_candidates(g, gens, complete=True) == []

    def test_needs_transitive_evidence(self):
        with pytest.raises(SymmetryError):
            detect_ring(cycle(8), gens=[tuple(range(8))])

    def test_candidates_sorted(self):
        rows = ring_candidates(cycle(12), complete=True)
        keys = [(s * t, not tight, t) for _, s, t, tight in rows]
        assert keys == sorted(keys) and keys[0][0] == 1

    def test_max_st_filter(self):
        rows = ring_candidates(cycle(30), complete=True, max_st=2)
        assert rows and all(s * t <= 2 for _, s, t, _ in rows)


class TestIntervalCover:
    def test_interval(self):
        g = cycle(100)
        cert = detect_ring(g)
        cov = interval_cover(g, cert, range(10, 31))
        assert len(cov.J) == 21 and cov.excess == 0 and cov.k == 2 and cov.holds

    def test_prism_gapped(self):
        g = prism(30)
        cert = detect_ring(g)
        A = {2 * i for i in range(5, 15)} | {11}
        cov = interval_cover(g, cert, A)
        assert cov.Q >= A and cov.holds

    def test_preconditions(self):
        g = cycle(20)
        cert = detect_ring(g)
        with pytest.raises(GraphError):
            interval_cover(g, cert, range(15))
        with pytest.raises(GraphError):
            interval_cover(g, cert, {0, 1, 5, 6})

    @given(st.integers(0, 59), st.integers(1, 30))
    def test_intervals_cover_exactly(self, start, length):
        g = cycle(60)
        cert = detect_ring(g)
        A = {(start + i) % 60 for i in range(length)}
        cov = interval_cover(g, cert, A)
        assert cov.Q == A


class TestPeriodic:
    def test_ladder(self):
        cert = detect_periodic_ring(ladder())
        assert (cert.s, cert.t, cert.tight) == (2, 1, True)

    def test_path(self):
        cert = detect_periodic_ring(integer_path())
        assert (cert.s, cert.t, cert.cohesive_q) == (1, 1, 1)

    def test_squared_path(self):
        cert = detect_periodic_ring(squared_path())
        assert (cert.s, cert.t) == (1, 2)

    def test_figure2(self):
        cert = detect_periodic_ring(figure2_presentation())
        assert cert is not None and cert.tight

    def test_bad_offsets(self):
        with pytest.raises(CertificateError):
            periodic_ring(ladder(), 2, (0, 0))


class TestKappa:
    @pytest.mark.parametrize("factory, value", [(ladder, 2), (integer_path, 1), (squared_path, 2)])
    def test_values(self, factory, value):
        res = kappa_infinity(factory())
        assert res.value == value and len(res.cut) == value
