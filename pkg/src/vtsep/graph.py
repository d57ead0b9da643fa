"""Finite simple graphs and digraphs, plus the boundary/depth/growth primitives.

Vertex sets are passed around as plain iterables of ids and returned as
``frozenset``.  Distances are unweighted BFS distances; an unreachable vertex
is reported as ``None``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import GraphError


@dataclass(frozen=True)
class Graph:
    """Immutable adjacency-list graph on vertices ``0..n-1``.

    For undirected graphs every edge appears in both lists.  ``gens`` carries
    automorphism evidence (permutations as tuples) attached by constructors;
    it does not take part in equality.
    """

    n: int
    adj: tuple
    directed: bool = False
    gens: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], directed=False,
                   strict=True, gens=()) -> "Graph":
        """Build a graph from an edge list.

        With ``strict`` duplicates are an error; otherwise they are merged
        (constructors such as circulants produce each edge twice).
        """
        if n < 0:
            raise GraphError("negative vertex count")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex id out of range in edge {u} {v}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if strict and v in nbrs[u]:
                raise GraphError(f"duplicate edge {u} {v}")
            nbrs[u].add(v)
            if not directed:
                nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), directed,
                   tuple(tuple(p) for p in gens))

    def with_gens(self, gens) -> "Graph":
        return Graph(self.n, self.adj, self.directed, tuple(tuple(p) for p in gens))

    def __len__(self):
        return self.n

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def in_adj(self) -> tuple:
        """In-neighbor lists (same as ``adj`` for undirected graphs)."""
        if not self.directed:
            return self.adj
        cached = self.__dict__.get("_in_adj")
        if cached is None:
            ins = [[] for _ in range(self.n)]
            for u in range(self.n):
                for v in self.adj[u]:
                    ins[v].append(u)
            cached = tuple(tuple(sorted(x)) for x in ins)
            object.__setattr__(self, "_in_adj", cached)
        return cached

    def edges(self):
        """Edges ``(u, v)``; undirected edges are listed once with ``u < v``."""
        for u in range(self.n):
            for v in self.adj[u]:
                if self.directed or u < v:
                    yield u, v

    def num_edges(self) -> int:
        total = sum(len(a) for a in self.adj)
        return total if self.directed else total // 2

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        # adjacency lists are sorted; bisect is not worth it at these sizes
        return v in a

    def underlying(self) -> "Graph":
        """Undirected graph obtained by forgetting arc orientations."""
        if not self.directed:
            return self
        return Graph.from_edges(self.n, self.edges(), strict=False, gens=self.gens)

    def induced(self, verts: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph and the list mapping new ids to old ids."""
        old = sorted(set(verts))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges()
                 if u in index and v in index]
        return Graph.from_edges(len(old), edges, self.directed, strict=False), old

    def is_regular(self) -> bool:
        if self.n == 0:
            return True
        d = len(self.adj[0])
        if any(len(a) != d for a in self.adj):
            return False
        if self.directed:
            return all(len(a) == d for a in self.in_adj)
        return True


@dataclass(frozen=True)
class BoundaryProfile:
    vertex_boundary: frozenset
    edge_cut_size: int
    out_boundary: frozenset
    in_boundary: frozenset
    out_cut_size: int
    in_cut_size: int


def vertex_set(g: Graph, A: Iterable[int]) -> frozenset:
    """Validate ids and return ``A`` as a frozenset."""
    s = frozenset(A)
    for v in s:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise GraphError(f"vertex id {v!r} out of range for graph on {g.n} vertices")
    return s


def bfs_distances(g: Graph, src: Iterable[int], reverse=False,
                  limit: Optional[int] = None) -> list:
    """Multi-source BFS.  Returns a list with ``None`` for unreachable vertices.

    ``reverse`` follows arcs backwards on digraphs; ``limit`` stops the search
    after that many layers (vertices beyond it are reported unreachable).
    """
    src = vertex_set(g, src)
    if not src:
        raise GraphError("empty source")
    adj = g.in_adj if reverse else g.adj
    dist = [None] * g.n
    q = deque()
    for s in src:
        dist[s] = 0
        q.append(s)
    while q:
        u = q.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if dist[w] is None:
                dist[w] = du + 1
                q.append(w)
    return dist


def boundary(g: Graph, A: Iterable[int]) -> frozenset:
    """Undirected boundary: vertices outside ``A`` adjacent to ``A``."""
    A = A if isinstance(A, frozenset) else frozenset(A)
    if A and (min(A) < 0 or max(A) >= g.n):
        raise GraphError(f"vertex id out of range 0..{g.n - 1}")
    out = set()
    adj = g.adj
    for u in A:
        out.update(adj[u])
    if g.directed:
        ins = g.in_adj
        for u in A:
            out.update(ins[u])
    out.difference_update(A)
    return frozenset(out)


def boundary_profile(g: Graph, A: Iterable[int]) -> BoundaryProfile:
    A = vertex_set(g, A)
    adj = g.adj
    out_b, cut_out = set(), 0
    for u in A:
        for v in adj[u]:
            if v not in A:
                out_b.add(v)
                cut_out += 1
    if not g.directed:
        fb = frozenset(out_b)
        return BoundaryProfile(fb, cut_out, fb, fb, cut_out, cut_out)
    in_b, cut_in = set(), 0
    for u in A:
        for v in g.in_adj[u]:
            if v not in A:
                in_b.add(v)
                cut_in += 1
    # edge cut of the underlying graph counts antiparallel pairs once
    und = set()
    for u in A:
        for v in adj[u]:
            if v not in A:
                und.add((u, v))
        for v in g.in_adj[u]:
            if v not in A:
                und.add((u, v))
    return BoundaryProfile(frozenset(out_b | in_b), len(und), frozenset(out_b),
                           frozenset(in_b), cut_out, cut_in)


def depth(g: Graph, A: Iterable[int]) -> int:
    """Largest distance from a vertex of ``A`` to the complement of ``A``."""
    A = vertex_set(g, A)
    if not A:
        raise GraphError("depth undefined for the empty set")
    if len(A) == g.n:
        raise GraphError("depth undefined for the full vertex set")
    rest = [v for v in range(g.n) if v not in A]
    # distance to the complement runs along arcs leaving A, i.e. backwards from it
    dist = bfs_distances(g, rest, reverse=g.directed)
    worst = 0
    for v in A:
        if dist[v] is None:
            raise GraphError(f"vertex {v} cannot reach the complement: infinite depth")
        worst = max(worst, dist[v])
    return worst


def diameter_of_set(g: Graph, A: Iterable[int]) -> int:
    """Maximum distance in ``g`` between two vertices of ``A``."""
    A = vertex_set(g, A)
    if not A:
        raise GraphError("diameter of the empty set")
    best = 0
    for x in A:
        dist = bfs_distances(g, [x])
        for y in A:
            if dist[y] is None:
                raise GraphError(f"infinite diameter: {y} unreachable from {x}")
            if dist[y] > best:
                best = dist[y]
    return best


def eccentricity(g: Graph, x: int) -> int:
    dist = bfs_distances(g, [x])
    if any(d is None for d in dist):
        raise GraphError("infinite diameter: graph is disconnected")
    return max(dist)


def diameter(g: Graph, transitive=False) -> int:
    """Graph diameter; with ``transitive`` a single BFS suffices."""
    if g.n == 0:
        raise GraphError("diameter of the empty graph")
    if transitive:
        return eccentricity(g, 0)
    return max(eccentricity(g, x) for x in range(g.n))


def ball(g: Graph, x: int, r: int) -> frozenset:
    dist = bfs_distances(g, [x], limit=r)
    return frozenset(v for v, d in enumerate(dist) if d is not None and d <= r)


def ball_growth(g: Graph, x: int, kmax: int) -> list:
    """``[b(0), ..., b(kmax)]`` where ``b(k) = |B(x, k)|``."""
    if kmax < 0:
        raise GraphError("kmax must be nonnegative")
    dist = bfs_distances(g, [x], limit=kmax)
    layer = [0] * (kmax + 1)
    for d in dist:
        if d is not None:
            layer[d] += 1
    out, total = [], 0
    for c in layer:
        total += c
        out.append(total)
    return out


def components(g: Graph, within: Optional[Iterable[int]] = None) -> list:
    """Connected components (of the underlying graph) restricted to ``within``."""
    allowed = set(range(g.n)) if within is None else set(within)
    adj, ins = g.adj, g.in_adj
    seen, comps = set(), []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for nb in (adj[u], ins[u]) if g.directed else (adj[u],):
                for w in nb:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph, within: Optional[Iterable[int]] = None) -> bool:
    return len(components(g, within)) <= 1


def check_connected_with_boundary(g: Graph, A: Iterable[int]) -> bool:
    """True iff the subgraph induced on ``A`` and its boundary is connected."""
    A = vertex_set(g, A)
    if not A:
        raise GraphError("empty set")
    return is_connected(g, A | boundary(g, A))


# -- text formats -----------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse ``graph <n> <m> <undirected|directed>`` followed by ``m`` edge lines."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "graph" or len(lines[0]) != 4:
        raise GraphError("expected header 'graph <n> <m> <undirected|directed>'")
    _, n, m, kind = lines[0]
    if kind not in ("undirected", "directed"):
        raise GraphError(f"unknown graph kind {kind!r}")
    n, m = int(n), int(m)
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for parts in body:
        if len(parts) != 2:
            raise GraphError(f"bad edge line {' '.join(parts)!r}")
        edges.append((int(parts[0]), int(parts[1])))
    directed = kind == "directed"
    if not directed:
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {u} {v}")
            seen.add(key)
    return Graph.from_edges(n, edges, directed=directed)


def format_graph(g: Graph) -> str:
    edges = list(g.edges())
    kind = "directed" if g.directed else "undirected"
    lines = [f"graph {g.n} {len(edges)} {kind}"]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_vertex_set(text: str, g: Optional[Graph] = None) -> frozenset:
    ids = [int(tok) for tok in text.split()]
    if len(set(ids)) != len(ids):
        raise GraphError("duplicate id in vertex set")
    s = frozenset(ids)
    return vertex_set(g, s) if g is not None else s


def format_vertex_set(A: Iterable[int]) -> str:
    return " ".join(str(v) for v in sorted(A)) + "\n"
