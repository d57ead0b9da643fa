"""Constructors for the graph families used as test substrates.

Every vertex-transitive constructor attaches automorphism generators to the
returned graph (``Graph.gens``) so callers never have to search for them.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import GraphError
from .graph import Graph


# -- groups ---------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    """Finite group as a multiplication table on ids ``0..order-1``."""

    order: int
    product: tuple
    inverse: tuple
    identity: int
    names: Optional[tuple] = None

    def mul(self, a: int, b: int) -> int:
        return self.product[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def check(self, samples=4096, seed=0) -> None:
        """Validate identity, inverse and associativity laws.

        Associativity is checked exhaustively up to order 64 and on random
        triples above that.
        """
        n, e, m = self.order, self.identity, self.product
        for a in range(n):
            if m[e][a] != a or m[a][e] != a:
                raise GraphError(f"identity law fails at {a}")
            if m[a][self.inverse[a]] != e or m[self.inverse[a]][a] != e:
                raise GraphError(f"inverse law fails at {a}")
        if n <= 64:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise GraphError(f"associativity fails at ({a}, {b}, {c})")


def group_from_elements(elements: Sequence, mul, name=str) -> GroupTable:
    """Tabulate a group given its elements and a multiplication function."""
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    prod = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
    ident = next(i for i in range(n) if all(prod[i][j] == j for j in range(n)))
    inv = tuple(next(j for j in range(n) if prod[i][j] == ident) for i in range(n))
    return GroupTable(n, prod, inv, ident, tuple(name(x) for x in elements))


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise GraphError("cyclic group order must be positive")
    prod = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return GroupTable(n, prod, inv, 0)


def symmetric_group(m: int) -> GroupTable:
    """``S_m`` on permutation tuples; product ``(p*q)(x) = p(q(x))``."""
    perms = list(itertools.permutations(range(m)))
    return group_from_elements(perms, lambda p, q: tuple(p[x] for x in q))


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order ``2n`` as pairs ``(r, f)`` meaning ``x -> (-1)^f x + r``."""
    elements = [(r, f) for f in (0, 1) for r in range(n)]

    def mul(a, b):
        ra, fa = a
        rb, fb = b
        return ((ra + (-rb if fa else rb)) % n, fa ^ fb)
    return group_from_elements(elements, mul)


def generating_subset(tbl: GroupTable) -> list:
    """A small generating set, built greedily."""
    gens, closure = [], {tbl.identity}
    for g in range(tbl.order):
        if g in closure:
            continue
        gens.append(g)
        frontier = list(closure)
        closure = set(closure)
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = tbl.mul(x, s)
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        if len(closure) == tbl.order:
            break
    return gens


# -- Cayley graphs and circulants ----------------------------------------------

def make_cayley(tbl: GroupTable, connection: Iterable[int], directed=False) -> Graph:
    """Cayley (di)graph with arcs ``x -> a*x`` for ``a`` in ``connection``.

    Right multiplications ``x -> x*g`` are automorphisms; those for a
    generating set of the group are attached.
    """
    conn = sorted(set(connection))
    if tbl.identity in conn:
        raise GraphError("connection set contains the identity (loops forbidden)")
    if not directed and any(tbl.inv(a) not in conn for a in conn):
        raise GraphError("undirected Cayley graph needs an inverse-closed connection set")
    edges = [(x, tbl.mul(a, x)) for x in range(tbl.order) for a in conn]
    gens = [tuple(tbl.mul(x, g) for x in range(tbl.order)) for g in generating_subset(tbl)]
    return Graph.from_edges(tbl.order, edges, directed=directed, strict=False, gens=gens)


def make_circulant(n: int, connection: Iterable[int], directed=False) -> Graph:
    """Circulant graph on ``Z_n``: ``i`` adjacent to ``i + s`` for ``s`` in ``connection``."""
    if n < 3:
        raise GraphError("circulant needs n >= 3")
    conn = sorted({s % n for s in connection})
    if not conn or 0 in conn:
        raise GraphError("connection must be a nonempty set of nonzero residues")
    if not directed and any((-s) % n not in conn for s in conn):
        raise GraphError("undirected circulant needs a connection set closed under negation")
    edges = [(i, (i + s) % n) for i in range(n) for s in conn]
    gens = [tuple((i + 1) % n for i in range(n))]
    if not directed:
        gens.append(tuple((-i) % n for i in range(n)))
    return Graph.from_edges(n, edges, directed=directed, strict=False, gens=gens)


def symmetric_connection(steps: Iterable[int]) -> list:
    """``{±s}`` for the given steps."""
    out = set()
    for s in steps:
        out.add(s)
        out.add(-s)
    return sorted(out)


def cycle(n: int) -> Graph:
    return make_circulant(n, [1, -1])


def path_graph(n: int) -> Graph:
    gens = [tuple(n - 1 - i for i in range(n))] if n > 1 else []
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], gens=gens)


def complete_graph(n: int) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    gens = []
    if n > 1:
        gens = [tuple((i + 1) % n for i in range(n)),
                (1, 0) + tuple(range(2, n))]
    return Graph.from_edges(n, edges, gens=gens)


def prism(n: int) -> Graph:
    """``C_n x K_2``; vertex ``(i, side)`` has id ``2*i + side``."""
    if n < 3:
        raise GraphError("prism needs n >= 3")
    vid = lambda i, s: 2 * (i % n) + s
    edges = []
    for i in range(n):
        edges.append((vid(i, 0), vid(i, 1)))
        for s in (0, 1):
            edges.append((vid(i, s), vid(i + 1, s)))
    rot = tuple(vid(i + 1, s) for i in range(n) for s in (0, 1))
    refl = tuple(vid(-i, s) for i in range(n) for s in (0, 1))
    swap = tuple(vid(i, 1 - s) for i in range(n) for s in (0, 1))
    return Graph.from_edges(n * 2, edges, strict=False, gens=[rot, refl, swap])


def torus(m: int, n: int) -> Graph:
    """``C_m □ C_n``; vertex ``(i, j)`` has id ``i*n + j``."""
    if m < 3 or n < 3:
        raise GraphError("torus needs both sides >= 3")
    vid = lambda i, j: (i % m) * n + (j % n)
    edges = []
    for i in range(m):
        for j in range(n):
            edges.append((vid(i, j), vid(i + 1, j)))
            edges.append((vid(i, j), vid(i, j + 1)))
    cells = [(i, j) for i in range(m) for j in range(n)]
    gens = [tuple(vid(i + 1, j) for i, j in cells),
            tuple(vid(i, j + 1) for i, j in cells),
            tuple(vid(-i, j) for i, j in cells),
            tuple(vid(i, -j) for i, j in cells)]
    if m == n:
        gens.append(tuple(vid(j, i) for i, j in cells))
    return Graph.from_edges(m * n, edges, strict=False, gens=gens)


def petersen() -> Graph:
    """Petersen graph: outer 5-cycle ``0..4``, spokes ``i -- i+5``, inner pentagram."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    rot = tuple((i + 1) % 5 for i in range(5)) + tuple(5 + (i + 1) % 5 for i in range(5))
    # swaps inner and outer rings: outer i -> inner 2i, inner i -> outer 2i
    flip = tuple(5 + (2 * i) % 5 for i in range(5)) + tuple((2 * i) % 5 for i in range(5))
    return Graph.from_edges(10, edges, gens=[rot, flip])


# -- windows and periodic presentations ------------------------------------------

@dataclass(frozen=True)
class WindowGraph:
    """Finite slab of an infinite graph.

    ``frontier`` over-marks vertices whose neighbourhoods may be truncated;
    every other vertex has its full degree.
    """

    graph: Graph
    layer_of: tuple
    frontier: frozenset
    labels: Optional[tuple] = None

    @property
    def interior(self) -> frozenset:
        return frozenset(range(self.graph.n)) - self.frontier


def tree_ball(d: int, r: int) -> WindowGraph:
    """Ball of radius ``r`` about the root of the ``d``-regular tree (BFS ids)."""
    if d < 2 or r < 0:
        raise GraphError("tree_ball needs d >= 2 and r >= 0")
    edges, layer = [], [0]
    frontier = [0]
    nxt_id = 1
    for depth in range(1, r + 1):
        new = []
        for v in frontier:
            kids = d if v == 0 else d - 1
            for _ in range(kids):
                edges.append((v, nxt_id))
                layer.append(depth)
                new.append(nxt_id)
                nxt_id += 1
        frontier = new
    g = Graph.from_edges(nxt_id, edges)
    leaves = frozenset(v for v in range(nxt_id) if layer[v] == r and r > 0) if r > 0 else frozenset([0])
    return WindowGraph(g, tuple(layer), leaves)


def oriented_tree_ball(d: int, r: int) -> WindowGraph:
    """``tree_ball`` with every edge directed towards the root (out-degree one off the root)."""
    w = tree_ball(d, r)
    arcs = []
    for u, v in w.graph.edges():
        child, parent = (u, v) if w.layer_of[u] > w.layer_of[v] else (v, u)
        arcs.append((child, parent))
    g = Graph.from_edges(w.graph.n, arcs, directed=True)
    return WindowGraph(g, w.layer_of, w.frontier, w.labels)


@dataclass(frozen=True)
class PeriodicAutomorphism:
    """Map ``(v, i) -> (perm[v], sign*i + offset[v])`` of a periodic graph.

    ``sign = +1`` keeps the two ends in place (a shift); ``-1`` swaps them.
    """

    perm: tuple
    sign: int
    offset: tuple

    def __call__(self, v: int, i: int) -> tuple:
        return self.perm[v], self.sign * i + self.offset[v]


@dataclass(frozen=True)
class PeriodicPresentation:
    """A two-ended graph given as a Z-periodic lift of a finite cell.

    Vertex ``(v, i)`` is cell vertex ``v`` in layer ``i``.  Cell edges are
    repeated in every layer; a jump ``(u, v, k)`` joins ``(u, i)`` and
    ``(v, i + k)`` for every ``i``.  Jumps are stored normalised with ``k > 0``.
    """

    cell: Graph
    jumps: tuple
    names: Optional[tuple] = None
    gens: tuple = field(default=(), compare=False, repr=False)

    @property
    def c(self) -> int:
        return self.cell.n

    @property
    def max_jump(self) -> int:
        return max((k for _, _, k in self.jumps), default=0)

    def neighbors(self, v: int, i: int):
        """Neighbours of ``(v, i)`` in the infinite graph."""
        out = [(w, i) for w in self.cell.adj[v]]
        for a, b, k in self.jumps:
            if a == v:
                out.append((b, i + k))
            if b == v:
                out.append((a, i - k))
        return out

    def degree(self, v: int) -> int:
        return len(self.neighbors(v, 0))

    def arc_set(self) -> frozenset:
        """All ``(u, v, d)`` with ``(u, i) ~ (v, i + d)``."""
        arcs = set()
        for u, v in self.cell.edges():
            arcs.add((u, v, 0))
            arcs.add((v, u, 0))
        for u, v, k in self.jumps:
            arcs.add((u, v, k))
            arcs.add((v, u, -k))
        return frozenset(arcs)

    def with_gens(self, gens) -> "PeriodicPresentation":
        return PeriodicPresentation(self.cell, self.jumps, self.names, tuple(gens))


def make_periodic(c: int, cell_edges, jumps, names=None, gens=()) -> PeriodicPresentation:
    cell = Graph.from_edges(c, cell_edges)
    norm = set()
    for u, v, k in jumps:
        if k == 0:
            raise GraphError("jump with k = 0 is a cell edge")
        if not (0 <= u < c and 0 <= v < c):
            raise GraphError(f"jump endpoint out of range: {u} {v}")
        key = (u, v, k) if k > 0 else (v, u, -k)
        if key in norm:
            raise GraphError(f"duplicate jump {u} {v} {k}")
        norm.add(key)
    return PeriodicPresentation(cell, tuple(sorted(norm)), tuple(names) if names else None,
                                tuple(gens))


def window(p: PeriodicPresentation, L: int, lo: Optional[int] = None) -> WindowGraph:
    """Materialise layers ``-L..L`` (or ``lo..L`` if given).

    Vertex ``(v, i)`` gets id ``(i - lo) * c + v``.  The frontier is every
    vertex within ``max_jump - 1`` layers of either end (at least the extreme
    layers themselves).
    """
    if L < 1:
        raise GraphError("window half-width must be >= 1")
    lo = -L if lo is None else lo
    hi = L
    c = p.c
    nlayers = hi - lo + 1
    vid = lambda v, i: (i - lo) * c + v
    edges = []
    for i in range(lo, hi + 1):
        for u, v in p.cell.edges():
            edges.append((vid(u, i), vid(v, i)))
        for u, v, k in p.jumps:
            if i + k <= hi:
                edges.append((vid(u, i), vid(v, i + k)))
    g = Graph.from_edges(nlayers * c, edges)
    layer_of = tuple(lo + idx // c for idx in range(nlayers * c))
    margin = max(p.max_jump, 1)
    frontier = frozenset(x for x in range(g.n)
                         if layer_of[x] < lo + margin or layer_of[x] > hi - margin)
    labels = tuple((x % c, layer_of[x]) for x in range(g.n))
    return WindowGraph(g, layer_of, frontier, labels)


def window_id(p: PeriodicPresentation, L: int, v: int, i: int) -> int:
    return (i + L) * p.c + v


def ladder() -> PeriodicPresentation:
    """``Z x K_2``: cell ``{a, b}`` with edge ``ab`` and jumps ``aa+1``, ``bb+1``."""
    gens = [PeriodicAutomorphism((1, 0), 1, (0, 0)), PeriodicAutomorphism((0, 1), -1, (0, 0))]
    return make_periodic(2, [(0, 1)], [(0, 0, 1), (1, 1, 1)], names=("a", "b"), gens=gens)


def integer_path() -> PeriodicPresentation:
    return make_periodic(1, [], [(0, 0, 1)], names=("a",),
                         gens=[PeriodicAutomorphism((0,), -1, (0,))])


def squared_path() -> PeriodicPresentation:
    return make_periodic(1, [], [(0, 0, 1), (0, 0, 2)], names=("a",),
                         gens=[PeriodicAutomorphism((0,), -1, (0,))])


def prism_periodic() -> PeriodicPresentation:
    """The ladder again, presented with a two-rung cell (a 4-cycle).

    Cell vertices ``a0, b0, a1, b1``; consecutive rungs inside the cell are
    joined by cell edges and rung 1 of layer ``i`` to rung 0 of layer ``i+1``
    by jumps.  Blocks of the natural ring are then half-cells, not layers.
    """
    # rung r -> -r-1 swaps the two halves of the cell and reverses layers
    gens = [PeriodicAutomorphism((1, 0, 3, 2), 1, (0, 0, 0, 0)),
            PeriodicAutomorphism((2, 3, 0, 1), -1, (-1, -1, -1, -1))]
    return make_periodic(4, [(0, 1), (2, 3), (0, 2), (1, 3)], [(2, 0, 1), (3, 1, 1)],
                         names=("a0", "b0", "a1", "b1"), gens=gens)


def figure2_presentation() -> PeriodicPresentation:
    """Two-ended vertex-transitive graph whose shifts have two orbits.

    Two rails ``a_i`` and ``b_i`` (each a two-way path) with diagonals
    ``a_i -- b_{i+1}`` in one direction only.  The reflection
    ``a_i <-> b_{-i}`` makes it vertex-transitive, but no end-preserving
    automorphism takes a rail to the other.
    """
    return make_periodic(2, [], [(0, 0, 1), (1, 1, 1), (0, 1, 1)], names=("a", "b"),
                         gens=[PeriodicAutomorphism((1, 0), -1, (0, 0))])


def figure2_cyclic(n: int) -> Graph:
    """Finite cyclic quotient of :func:`figure2_presentation` with ``n`` layers."""
    if n < 3:
        raise GraphError("need at least 3 layers")
    a = lambda i: 2 * (i % n)
    b = lambda i: 2 * (i % n) + 1
    edges = []
    for i in range(n):
        edges += [(a(i), a(i + 1)), (b(i), b(i + 1)), (a(i), b(i + 1))]
    shift = tuple(x for i in range(n) for x in (a(i + 1), b(i + 1)))
    refl = tuple(x for i in range(n) for x in (b(-i), a(-i)))
    return Graph.from_edges(2 * n, edges, gens=[shift, refl])


PERIODIC_FAMILIES = {
    "ladder": ladder,
    "path": integer_path,
    "squared_path": squared_path,
    "prism_periodic": prism_periodic,
    "figure2": figure2_presentation,
}


FAMILIES = ("prism", "torus", "petersen", "figure2", "tree_ball", "cycle", "path", "complete")


def make_family(name: str, *params: int):
    """Named family constructor.

    ``prism``, ``torus``, ``petersen``, ``cycle``, ``path`` and ``complete``
    return a :class:`Graph`; ``tree_ball`` and ``figure2`` return a
    :class:`WindowGraph` (the latter a default window of half-width 6, or
    ``params[0]``).
    """
    try:
        if name == "prism":
            (n,) = params
            return prism(n)
        if name == "torus":
            m, n = params
            return torus(m, n)
        if name == "petersen":
            if params:
                raise ValueError
            return petersen()
        if name == "tree_ball":
            d, r = params
            return tree_ball(d, r)
        if name == "figure2":
            L = params[0] if params else 6
            return window(figure2_presentation(), L)
        if name == "cycle":
            (n,) = params
            return cycle(n)
        if name == "path":
            (n,) = params
            return path_graph(n)
        if name == "complete":
            (n,) = params
            return complete_graph(n)
    except ValueError:
        raise GraphError(f"bad parameters for family {name!r}: {params}") from None
    raise GraphError(f"unknown family {name!r}")


# -- periodic text format ---------------------------------------------------------

def parse_periodic(text: str) -> PeriodicPresentation:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "periodic" or len(lines[0]) != 4:
        raise GraphError("expected header 'periodic <c> <m> <j>'")
    c, m, j = map(int, lines[0][1:])
    body = lines[1:]
    if len(body) != m + j:
        raise GraphError(f"expected {m} edge lines and {j} jump lines, found {len(body)} lines")
    edges = [tuple(map(int, ln)) for ln in body[:m]]
    jumps = [tuple(map(int, ln)) for ln in body[m:]]
    if any(len(e) != 2 for e in edges) or any(len(x) != 3 for x in jumps):
        raise GraphError("malformed edge or jump line")
    seen = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate cell edge {u} {v}")
        seen.add(key)
    return make_periodic(c, edges, jumps)


def format_periodic(p: PeriodicPresentation) -> str:
    edges = list(p.cell.edges())
    lines = [f"periodic {p.c} {len(edges)} {len(p.jumps)}"]
    lines += [f"{u} {v}" for u, v in edges]
    lines += [f"{u} {v} {k}" for u, v, k in p.jumps]
    return "\n".join(lines) + "\n"
