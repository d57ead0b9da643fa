"""Integer voltage maps and finite windows of the covers they define."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import CertificateError, GraphError
from .generators import WindowGraph
from .graph import Graph, components, is_connected, vertex_set
from .symmetry import apply_set, violated_edge
from .tubes import TubeCertificate


@dataclass(frozen=True)
class VoltageMap:
    """Antisymmetric integer labels on the arcs of an undirected graph."""

    base: Graph
    value: dict     # (u, v) -> int, both orientations present

    def __post_init__(self):
        if self.base.directed:
            raise GraphError("voltage maps live on undirected graphs")
        arcs = {(u, v) for u in range(self.base.n) for v in self.base.adj[u]}
        if set(self.value) != arcs:
            raise GraphError("voltage map must be defined on exactly the arcs of the base graph")
        for (u, v), k in self.value.items():
            if self.value[(v, u)] != -k:
                raise GraphError(f"voltage not antisymmetric on arc {u}-{v}")

    @classmethod
    def from_edges(cls, base: Graph, labels=()) -> "VoltageMap":
        """Build from ``(u, v, k)`` triples, one orientation per edge; omitted edges get 0."""
        value = {}
        for u, v in base.edges():
            value[(u, v)] = value[(v, u)] = 0
        seen = set()
        for u, v, k in labels:
            if not base.has_edge(u, v):
                raise GraphError(f"{u}-{v} is not an edge of the base graph")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"voltage given twice for edge {u}-{v}")
            seen.add(key)
            value[(u, v)] = k
            value[(v, u)] = -k
        return cls(base, value)

    @classmethod
    def zero(cls, base: Graph) -> "VoltageMap":
        return cls.from_edges(base)

    def __call__(self, u: int, v: int) -> int:
        return self.value[(u, v)]

    @property
    def max_abs(self) -> int:
        return max((abs(k) for k in self.value.values()), default=0)


@dataclass(frozen=True)
class CoverWindow:
    window: WindowGraph
    projection: tuple
    L: int

    def vid(self, u: int, i: int) -> int:
        return (i + self.L) * self._c + u

    @property
    def _c(self) -> int:
        return len(self.projection) // (2 * self.L + 1)

    def layer(self, i: int) -> frozenset:
        c = self._c
        start = (i + self.L) * c
        return frozenset(range(start, start + c))


def build_cover_window(mu: VoltageMap, L: int) -> CoverWindow:
    """Layers ``-L..L`` of the cover; vertex ``(u, i)`` has id ``(i + L) * n + u``.

    Vertices in layers with ``|i| > L - max|mu|`` are frontier: their
    neighbours may fall outside the window.
    """
    if L < 1:
        raise GraphError("window half-width must be >= 1")
    base = mu.base
    n = base.n
    vid = lambda u, i: (i + L) * n + u
    edges = []
    for i in range(-L, L + 1):
        for u, v in base.edges():
            j = i + mu(u, v)
            if -L <= j <= L:
                edges.append((vid(u, i), vid(v, j)))
    total = (2 * L + 1) * n
    g = Graph.from_edges(total, edges)
    layer_of = tuple(x // n - L for x in range(total))
    M = mu.max_abs
    frontier = frozenset(x for x in range(total) if abs(layer_of[x]) > L - M)
    labels = tuple((x % n, layer_of[x]) for x in range(total))
    proj = tuple(x % n for x in range(total))
    return CoverWindow(WindowGraph(g, layer_of, frontier, labels), proj, L)


def add_delta(mu: VoltageMap, S, m: int) -> VoltageMap:
    """``mu + delta_S^m``: arcs leaving ``S`` gain ``m``, arcs entering ``S`` lose ``m``."""
    S = vertex_set(mu.base, S)
    value = {}
    for (u, v), k in mu.value.items():
        d = m if (u in S and v not in S) else -m if (v in S and u not in S) else 0
        value[(u, v)] = k + d
    return VoltageMap(mu.base, value)


def negate(mu: VoltageMap) -> VoltageMap:
    return VoltageMap(mu.base, {a: -k for a, k in mu.value.items()})


def transform_voltage(mu: VoltageMap, kind: str, S=(), m: int = 0) -> VoltageMap:
    if kind == "negate":
        return negate(mu)
    if kind == "add_delta":
        return add_delta(mu, S, m)
    raise GraphError(f"unknown voltage transformation {kind!r}")


def fundamental_cycles(g: Graph) -> list:
    """One closed walk (vertex list, first = last) per non-tree edge of a BFS forest."""
    parent = [None] * g.n
    depth_ = [0] * g.n
    seen = [False] * g.n
    tree = set()
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        queue = [r]
        for x in queue:
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    depth_[y] = depth_[x] + 1
                    tree.add((min(x, y), max(x, y)))
                    queue.append(y)
    cycles = []
    for u, v in g.edges():
        if (u, v) in tree:
            continue
        a, b = u, v
        left, right = [a], [b]
        while a != b:
            if depth_[a] >= depth_[b]:
                a = parent[a]
                left.append(a)
            else:
                b = parent[b]
                right.append(b)
        # left: u..lca, right: v..lca; walk u -> lca -> v -> u
        walk = left + right[-2::-1] + [u]
        cycles.append(walk)
    return cycles


def walk_sum(mu: VoltageMap, walk) -> int:
    return sum(mu(walk[i], walk[i + 1]) for i in range(len(walk) - 1))


def cycle_sums(mu: VoltageMap) -> list:
    return [walk_sum(mu, w) for w in fundamental_cycles(mu.base)]


def delta_relabel(S, m: int):
    """Projection-preserving map from the cover of ``mu`` to that of ``mu + delta_S^m``."""
    S = frozenset(S)
    return lambda u, i: (u, i - m if u in S else i)


def check_relabel(mu: VoltageMap, mu2: VoltageMap, relabel, L: int) -> bool:
    """Check that ``relabel`` carries interior adjacency of one cover onto the other."""
    n = mu.base.n
    M = max(mu.max_abs, mu2.max_abs)
    shift = max(abs(relabel(u, 0)[1]) for u in range(n))
    inner = L - M - shift
    if inner < 0:
        raise GraphError("window too narrow for the relabelling check")
    for i in range(-inner, inner + 1):
        for u, v in mu.base.edges():
            for a, b in ((u, v), (v, u)):
                for j in range(i - 2 * M - 1, i + 2 * M + 2):
                    adj1 = j - i == mu(a, b)
                    ra, ri = relabel(a, i)
                    rb, rj = relabel(b, j)
                    if ra != a or rb != b:
                        return False
                    adj2 = rj - ri == mu2(a, b)
                    if adj1 != adj2:
                        return False
    return True


def mu_from_tube(g: Graph, cert: TubeCertificate, phi) -> VoltageMap:
    """Voltage ``+1`` on arcs from ``phi(L)`` into ``phi(A)``, ``-1`` on the reverse arcs."""
    phi = tuple(phi)
    bad = violated_edge(g, phi)
    if bad is not None:
        raise CertificateError(f"phi is not an automorphism (edge {bad[0]}-{bad[1]})")
    L_ = apply_set(phi, cert.L)
    A_ = apply_set(phi, cert.A)
    labels = []
    for u, v in g.edges():
        if u in L_ and v in A_:
            labels.append((u, v, 1))
        elif v in L_ and u in A_:
            labels.append((v, u, 1))
    return VoltageMap.from_edges(g, labels)


@dataclass(frozen=True)
class LayerReport:
    mu: VoltageMap = field(repr=False)
    L: int
    deleted: int
    interior_layers: tuple
    layers_are_components: bool
    cover_connected: bool
    bad_layer: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.layers_are_components and self.cover_connected


def layer_decomposition_check(g: Graph, cert: TubeCertificate, L: int,
                              mu: Optional[VoltageMap] = None, delete_lifted=True) -> LayerReport:
    """Lift a tube to its cover and check the layers become the components.

    Uses the tube voltage with ``phi`` the identity unless ``mu`` is given.
    Lifted edges projecting onto ``E[L-side, A]`` are deleted; every component
    meeting an interior layer must then be exactly that layer.  The undeleted
    window must also be connected, which fails for the zero-voltage control.
    """
    A, Ls = cert.A, cert.L
    rest_edges = [(u, v) for u, v in g.edges()
                  if not ((u in Ls and v in A) or (v in Ls and u in A))]
    if not is_connected(Graph.from_edges(g.n, rest_edges)):
        raise CertificateError("graph minus the edges between A and the L side is disconnected")
    if mu is None:
        mu = mu_from_tube(g, cert, tuple(range(g.n)))
    cw = build_cover_window(mu, L)
    wg = cw.window.graph
    proj = cw.projection
    M = mu.max_abs
    interior = tuple(range(-(L - M), L - M + 1))
    if not interior:
        raise GraphError("window has no interior layers")
    kept, deleted = [], 0
    for x, y in wg.edges():
        px, py = proj[x], proj[y]
        lifted = (px in Ls and py in A) or (py in Ls and px in A)
        if lifted and delete_lifted:
            deleted += 1
        else:
            kept.append((x, y))
    cut = Graph.from_edges(wg.n, kept)
    comp_of = {}
    for comp in components(cut):
        for x in comp:
            comp_of[x] = comp
    ok, bad = True, None
    for i in interior:
        layer = cw.layer(i)
        if comp_of[min(layer)] != layer:
            ok, bad = False, i
            break
    return LayerReport(mu, L, deleted, interior, ok, is_connected(wg), bad)


def parse_voltage(text: str, base: Graph) -> VoltageMap:
    triples = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 3:
            raise GraphError(f"malformed voltage line {ln!r}")
        triples.append(tuple(int(x) for x in parts))
    return VoltageMap.from_edges(base, triples)


def format_voltage(mu: VoltageMap) -> str:
    return "".join(f"{u} {v} {mu(u, v)}\n" for u, v in mu.base.edges())
