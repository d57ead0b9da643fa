"""Automorphisms, orbits, blocks of imprimitivity and quotient graphs.

Permutations are tuples ``p`` with ``p[v]`` the image of ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import BudgetExhausted, SymmetryError
from .graph import Graph, bfs_distances


# -- permutations -------------------------------------------------------------

def identity(n: int) -> tuple:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """``p`` after ``q``: ``v -> p[q[v]]``."""
    return tuple(p[x] for x in q)


def invert(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def apply_set(p: Sequence[int], A: Iterable[int]) -> frozenset:
    return frozenset(p[v] for v in A)


def check_permutation(p: Sequence[int], n: int) -> tuple:
    p = tuple(p)
    if len(p) != n or sorted(p) != list(range(n)):
        raise SymmetryError(f"not a permutation of {n} points")
    return p


def is_automorphism(g: Graph, p: Sequence[int]) -> bool:
    return violated_edge(g, p) is None


def violated_edge(g: Graph, p: Sequence[int]):
    """First edge whose image is not an edge, or ``None``."""
    for u, v in g.edges():
        if not g.has_edge(p[u], p[v]):
            return u, v
    return None


def parse_permutations(text: str) -> list:
    perms = []
    for ln in text.splitlines():
        if ln.strip() and not ln.lstrip().startswith("#"):
            perms.append(tuple(int(x) for x in ln.split()))
    if perms:
        n = len(perms[0])
        for p in perms:
            check_permutation(p, n)
    return perms


def format_permutations(perms) -> str:
    return "".join(" ".join(map(str, p)) + "\n" for p in perms)


# -- union-find ---------------------------------------------------------------

class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra, rb


# -- orbits and transitivity --------------------------------------------------

def orbits(n: int, gens) -> list:
    uf = _UnionFind(n)
    for p in gens:
        for v in range(n):
            uf.union(v, p[v])
    groups = {}
    for v in range(n):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted((frozenset(c) for c in groups.values()), key=min)


def orbit_transitivity(n: int, gens, g: Optional[Graph] = None):
    """Return ``(transitive, orbit_partition)`` for the group generated by ``gens``.

    When ``g`` is supplied every generator is first checked to be an
    automorphism of it.
    """
    gens = [check_permutation(p, n) for p in gens]
    if g is not None:
        if g.n != n:
            raise SymmetryError("permutation length does not match the graph")
        for i, p in enumerate(gens):
            bad = violated_edge(g, p)
            if bad is not None:
                u, v = bad
                raise SymmetryError(
                    f"generator {i} is not an automorphism: edge {u}-{v} maps to non-edge {p[u]}-{p[v]}")
    orb = orbits(n, gens)
    return len(orb) == 1, orb


def require_transitive(g: Graph, gens=None) -> list:
    gens = list(g.gens if gens is None else gens)
    ok, orb = orbit_transitivity(g.n, gens, g)
    if not ok:
        raise SymmetryError(f"generators are not transitive ({len(orb)} orbits)")
    return gens


# -- automorphism search ------------------------------------------------------

@dataclass
class AutomorphismGroup:
    generators: list
    order: int
    base: list = field(default_factory=list)
    orbit_sizes: list = field(default_factory=list)
    nodes: int = 0


def find_automorphisms(g: Graph, node_limit: int = 200_000) -> AutomorphismGroup:
    """Generators and exact order of ``Aut(g)`` by backtracking.

    Walks a base ``b1, b2, ...``; at each level it computes the orbit of the
    next base point under the pointwise stabiliser of the earlier ones by
    searching, per candidate image, for one automorphism extending the
    partial map.  Candidates are pruned by degree and by the vector of
    distances to already-fixed base points.  Intended for graphs of at most
    a few dozen vertices.
    """
    if g.directed:
        raise SymmetryError("automorphism search supports undirected graphs only")
    n = g.n
    if n == 0:
        return AutomorphismGroup([], 1)
    dist = [bfs_distances(g, [v]) for v in range(n)]
    deg = [g.degree(v) for v in range(n)]
    adjset = [set(a) for a in g.adj]
    budget = [node_limit]

    def extend(mapping, used):
        # mapping: dict on a prefix; extend to a full automorphism or None
        if len(mapping) == n:
            return tuple(mapping[v] for v in range(n))
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExhausted("search budget exhausted")
        # pick the unmapped vertex with fewest candidates
        best_v, best_c = None, None
        for v in range(n):
            if v in mapping:
                continue
            cands = []
            for w in range(n):
                if w in used or deg[w] != deg[v]:
                    continue
                ok = True
                for x, y in mapping.items():
                    if dist[v][x] != dist[w][y]:
                        ok = False
                        break
                    if (x in adjset[v]) != (y in adjset[w]):
                        ok = False
                        break
                if ok:
                    cands.append(w)
            if best_c is None or len(cands) < len(best_c):
                best_v, best_c = v, cands
                if len(cands) <= 1:
                    break
        for w in best_c:
            mapping[best_v] = w
            used.add(w)
            res = extend(mapping, used)
            del mapping[best_v]
            used.discard(w)
            if res is not None:
                return res
        return None

    fixed = {}
    gens, base, sizes = [], [], []
    order = 1
    while len(fixed) < n:
        # next base point: an unfixed vertex with a non-singleton candidate class
        classes = {}
        for v in range(n):
            if v in fixed:
                continue
            key = (deg[v],) + tuple(dist[v][x] for x in base)
            classes.setdefault(key, []).append(v)
        if all(len(c) == 1 for c in classes.values()):
            # the refinement is discrete; check whether the forced map is the identity
            break
        b = min(min(c) for c in classes.values() if len(c) > 1)
        key = (deg[b],) + tuple(dist[b][x] for x in base)
        cands = classes[key]
        level_gens = []
        orbit = {b}
        for c in cands:
            if c in orbit:
                continue
            mapping = dict(fixed)
            mapping[b] = c
            used = set(mapping.values())
            perm = extend(mapping, used)
            if perm is None:
                continue
            level_gens.append(perm)
            # close the orbit under this level's generators
            frontier = list(orbit)
            orbit_list = set(orbit)
            while frontier:
                x = frontier.pop()
                for p in level_gens:
                    y = p[x]
                    if y not in orbit_list:
                        orbit_list.add(y)
                        frontier.append(y)
            orbit = orbit_list
        # generators of deeper levels also stabilise b, so the orbit is exact
        # once every candidate has been resolved
        gens.extend(level_gens)
        base.append(b)
        sizes.append(len(orbit))
        order *= len(orbit)
        fixed[b] = b
    return AutomorphismGroup(gens, order, base, sizes, node_limit - budget[0])


# -- blocks of imprimitivity --------------------------------------------------

@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple
    block_of: tuple
    trivial: bool = False

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "BlockSystem":
        """Canonical block system from arbitrary per-vertex labels."""
        relabel, block_of, members = {}, [], []
        for v, lab in enumerate(labels):
            if lab not in relabel:
                relabel[lab] = len(members)
                members.append([])
            block_of.append(relabel[lab])
            members[relabel[lab]].append(v)
        n = len(labels)
        trivial = len(members) in (1, n)
        return cls(tuple(frozenset(m) for m in members), tuple(block_of), trivial)

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "BlockSystem":
        labels = [None] * n
        for i, b in enumerate(blocks):
            for v in b:
                if labels[v] is not None:
                    raise SymmetryError(f"vertex {v} lies in two blocks")
                labels[v] = i
        if any(lab is None for lab in labels):
            raise SymmetryError("blocks do not cover every vertex")
        return cls.from_labels(labels)

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def block_size(self) -> Optional[int]:
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    def block_action(self, p: Sequence[int]) -> tuple:
        """The permutation induced on block indices (raises if not a block map)."""
        img = []
        for b in self.blocks:
            targets = {self.block_of[p[v]] for v in b}
            if len(targets) != 1:
                raise SymmetryError("permutation does not map blocks to blocks")
            img.append(targets.pop())
        return tuple(img)


def is_block_system(sys: BlockSystem, gens) -> bool:
    try:
        for p in gens:
            sys.block_action(p)
    except SymmetryError:
        return False
    return True


def _closure(n, gens, uf, queue):
    while queue:
        x, y = queue.pop()
        for p in gens:
            merged = uf.union(p[x], p[y])
            if merged is not None:
                queue.append(merged)


def minimal_block_system(n: int, gens, seed, check_transitive=True) -> BlockSystem:
    """Finest block system in which all seed vertices share a block.

    ``seed`` is a pair (or any collection) of vertices.  Uses the union-find
    closure: merge the images of merged pairs under every generator until
    nothing changes.
    """
    gens = [tuple(p) for p in gens]
    if check_transitive and len(orbits(n, gens)) != 1:
        raise SymmetryError("action is not transitive")
    seed = list(seed)
    if len(seed) < 2 or len(set(seed)) != len(seed):
        raise SymmetryError("seed must contain at least two distinct vertices")
    uf = _UnionFind(n)
    queue = []
    for v in seed[1:]:
        merged = uf.union(seed[0], v)
        if merged is not None:
            queue.append(merged)
    _closure(n, gens, uf, queue)
    sys = BlockSystem.from_labels([uf.find(v) for v in range(n)])
    if not is_block_system(sys, gens):  # pragma: no cover - closure guarantees this
        raise SymmetryError("closure produced a non-block partition")
    return sys


def enumerate_block_systems(n: int, gens, complete=False) -> list:
    """Block systems of a transitive action, coarse-to-fine order not implied.

    By default these are the minimal systems generated by seeds ``(0, v)``
    plus the two trivial systems.  With ``complete`` the set is closed under
    joins, which yields every block system of the action: the block of 0 in
    any system is the union of the minimal blocks of its pairs ``(0, v)``.
    """
    gens = [tuple(p) for p in gens]
    if len(orbits(n, gens)) != 1:
        raise SymmetryError("action is not transitive")
    found = {}

    def add(sys):
        key = sys.block_of
        if key not in found:
            found[key] = sys
            return True
        return False

    add(BlockSystem.from_labels(list(range(n))))
    add(BlockSystem.from_labels([0] * n))
    cyc = full_cycle_positions(n, gens)
    if cyc is not None:
        # every block system is one of the regular cyclic subgroup's: residues mod a divisor
        for d in range(2, n):
            if n % d == 0:
                sys = BlockSystem.from_labels([cyc[v] % d for v in range(n)])
                if is_block_system(sys, gens):
                    add(sys)
        return _sorted_systems(found)
    pending = []
    for v in range(1, n):
        sys = minimal_block_system(n, gens, (0, v), check_transitive=False)
        if add(sys):
            pending.append(sys)
    if complete:
        # every block system is a join of minimal ones, so close under joins;
        # a system is fixed by its block of 0, so a known block of 0 saves the join
        by_zero = {s.blocks[s.block_of[0]]: s for s in found.values()}
        minimal = list(pending)
        while pending:
            sys = pending.pop()
            z = sys.blocks[sys.block_of[0]]
            for other in minimal:
                u = z | other.blocks[other.block_of[0]]
                if u in by_zero:
                    continue
                joined = join_block_systems(sys, other)
                jz = joined.blocks[joined.block_of[0]]
                by_zero[u] = by_zero[jz] = joined
                if add(joined):
                    pending.append(joined)
    return _sorted_systems(found)


def _sorted_systems(found) -> list:
    systems = list(found.values())
    systems.sort(key=lambda s: (-len(s.blocks), s.block_of))
    return systems


def full_cycle_positions(n: int, gens):
    """Positions along a generator that is a single ``n``-cycle, if there is one."""
    for p in gens:
        pos = [None] * n
        x, i = 0, 0
        while pos[x] is None:
            pos[x] = i
            x = p[x]
            i += 1
        if i == n:
            return pos
    return None


def join_block_systems(a: BlockSystem, b: BlockSystem) -> BlockSystem:
    """Finest partition coarser than both; a block system when both are."""
    uf = _UnionFind(a.n)
    for sys in (a, b):
        for blk in sys.blocks:
            it = iter(blk)
            first = next(it)
            for v in it:
                uf.union(first, v)
    return BlockSystem.from_labels([uf.find(v) for v in range(a.n)])


def quotient_graph(g: Graph, sys: BlockSystem) -> Graph:
    """Graph on blocks; blocks adjacent iff some edge joins them."""
    if sys.n != g.n:
        raise SymmetryError("block system size does not match graph")
    edges = set()
    for u, v in g.edges():
        a, b = sys.block_of[u], sys.block_of[v]
        if a != b:
            edges.add((a, b) if g.directed else (min(a, b), max(a, b)))
    return Graph.from_edges(len(sys.blocks), sorted(edges), directed=g.directed)


def parse_blocks(text: str, n: int) -> BlockSystem:
    blocks = [[int(x) for x in ln.split()] for ln in text.splitlines() if ln.strip()]
    return BlockSystem.from_blocks(n, blocks)


def format_blocks(sys: BlockSystem) -> str:
    return "".join(" ".join(map(str, sorted(b))) + "\n" for b in sys.blocks)
