import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from conftest import to_nx
from vtsep.errors import SymmetryError
from vtsep.generators import complete_graph, cycle, make_circulant, path_graph, petersen, prism, torus
from vtsep.graph import Graph
from vtsep.symmetry import (BlockSystem, compose, enumerate_block_systems, find_automorphisms,
                            format_permutations, invert, is_automorphism, is_block_system,
                            join_block_systems, minimal_block_system, orbit_transitivity,
                            parse_permutations, quotient_graph, require_transitive)


def _rotation(n):
    return [tuple((i + 1) % n for i in range(n))]


def _group_closure(n, gens):
    ident = tuple(range(n))
    seen, frontier = {ident}, [ident]
    while frontier:
        p = frontier.pop()
        for q in gens:
            r = compose(q, p)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return seen


def _brute_block_systems(n, gens):
    """All invariant partitions, by checking every set partition (tiny ``n`` only)."""
    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part
    out = set()
    for part in partitions(list(range(n))):
        sys_ = BlockSystem.from_blocks(n, part)
        if len({len(b) for b in part}) == 1 and is_block_system(sys_, gens):
            out.add(sys_.block_of)
    return out


class TestPermutations:
    @given(st.permutations(range(7)), st.permutations(range(7)))
    def test_compose_invert(self, p, q):
        p, q = tuple(p), tuple(q)
        assert compose(p, invert(p)) == tuple(range(7))
        assert invert(compose(p, q)) == compose(invert(q), invert(p))

    def test_format_round_trip(self):
        gens = prism(5).gens
        assert parse_permutations(format_permutations(gens)) == [tuple(p) for p in gens]

    def test_bad_permutation(self):
        with pytest.raises(SymmetryError):
            orbit_transitivity(3, [(0, 0, 1)])


class TestAutomorphisms:
    @pytest.mark.parametrize("g, order", [(cycle(5), 10), (complete_graph(4), 24), (petersen(), 120),
                                          (prism(5), 20), (path_graph(4), 2)])
    def test_group_order(self, g, order):
        res = find_automorphisms(g)
        assert res.order == order
        assert all(is_automorphism(g, p) for p in res.generators)

    @pytest.mark.parametrize("g", [cycle(6), petersen(), prism(4), torus(3, 4)])
    def test_order_matches_isomorphism_count(self, g):
        h = to_nx(g)
        count = sum(1 for _ in GraphMatcher(h, h).isomorphisms_iter())
        res = find_automorphisms(g)
        assert res.order == count
        assert len(_group_closure(g.n, res.generators)) == count

    def test_orbits(self):
        ok, _ = orbit_transitivity(6, _rotation(6))
        assert ok
        ok, orb = orbit_transitivity(3, [(2, 1, 0)], path_graph(3))
        assert not ok and orb == [frozenset({0, 2}), frozenset({1})]
        ok, _ = orbit_transitivity(12, prism(6).gens, prism(6))
        assert ok

    def test_non_automorphism_rejected(self):
        with pytest.raises(SymmetryError):
            require_transitive(path_graph(3), _rotation(3))


class TestBlocks:
    def test_minimal_systems_c6(self):
        gens = _rotation(6)
        assert set(minimal_block_system(6, gens, (0, 3)).blocks) == {frozenset({0, 3}), frozenset({1, 4}),
                                                                     frozenset({2, 5})}
        assert set(minimal_block_system(6, gens, (0, 2)).blocks) == {frozenset({0, 2, 4}),
                                                                     frozenset({1, 3, 5})}
        assert len(minimal_block_system(6, gens, (0, 1)).blocks) == 1

    def test_c6_nontrivial(self):
        found = {len(s.blocks) for s in enumerate_block_systems(6, _rotation(6), complete=True)
                 if not s.trivial}
        assert found == {3, 2}

    def test_prime_cycle_has_no_proper_system(self):
        assert all(s.trivial for s in enumerate_block_systems(5, _rotation(5), complete=True))

    def test_prism_rungs(self):
        g = prism(6)
        rungs = {frozenset({2 * i, 2 * i + 1}) for i in range(6)}
        systems = enumerate_block_systems(g.n, g.gens)
        assert any(set(s.blocks) == rungs for s in systems)

    @pytest.mark.parametrize("g", [cycle(8), cycle(9), prism(4), make_circulant(8, [1, -1, 3, -3]),
                                   torus(3, 3)])
    def test_complete_enumeration_against_brute_force(self, g):
        ours = {s.block_of for s in enumerate_block_systems(g.n, g.gens, complete=True)}
        assert ours == _brute_block_systems(g.n, g.gens)

    @given(st.integers(3, 60))
    @settings(max_examples=25)
    def test_cycle_systems_are_divisors(self, n):
        systems = enumerate_block_systems(n, cycle(n).gens, complete=True)
        sizes = sorted(len(s.blocks[0]) for s in systems)
        assert sizes == [d for d in range(1, n + 1) if n % d == 0]

    @pytest.mark.parametrize("g", [prism(6), torus(4, 4), petersen()])
    def test_returned_systems_are_invariant(self, g):
        gens = g.gens if g.gens else find_automorphisms(g).generators
        for s in enumerate_block_systems(g.n, gens, complete=True):
            assert is_block_system(s, gens)

    def test_join(self):
        gens = _rotation(12)
        a = minimal_block_system(12, gens, (0, 4))
        b = minimal_block_system(12, gens, (0, 6))
        j = join_block_systems(a, b)
        assert len(j.blocks) == 2 and is_block_system(j, gens)


class TestQuotient:
    def test_prism_rungs_to_cycle(self):
        g = prism(6)
        sys_ = BlockSystem.from_blocks(12, [[2 * i, 2 * i + 1] for i in range(6)])
        q = quotient_graph(g, sys_)
        assert nx.is_isomorphic(to_nx(q), nx.cycle_graph(6))

    def test_antipodal_c6(self):
        sys_ = BlockSystem.from_blocks(6, [[0, 3], [1, 4], [2, 5]])
        assert nx.is_isomorphic(to_nx(quotient_graph(cycle(6), sys_)), nx.cycle_graph(3))

    def test_singletons(self):
        g = petersen()
        q = quotient_graph(g, BlockSystem.from_labels(list(range(10))))
        assert q.adj == g.adj

    def test_quotients_compose(self):
        g = cycle(12)
        fine = minimal_block_system(12, g.gens, (0, 6))
        coarse = join_block_systems(minimal_block_system(12, g.gens, (0, 4)), fine)
        q1 = quotient_graph(g, fine)
        induced = BlockSystem.from_labels([coarse.block_of[min(b)] for b in fine.blocks])
        twice = quotient_graph(q1, induced)
        once = quotient_graph(g, coarse)
        assert nx.is_isomorphic(to_nx(twice), to_nx(once))
