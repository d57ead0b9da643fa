"""Cyclic systems, ring-like certificates, cohesiveness and kappa-infinity.

Finite graphs carry a circular order on the blocks of a block system.
Periodic presentations carry a linear order: vertex ``(v, i)`` lies in block
``period * i + offset[v]``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Optional, Sequence

from .errors import CertificateError, GraphError, SymmetryError
from .generators import PeriodicAutomorphism, PeriodicPresentation, window
from .graph import (Graph, bfs_distances, boundary, check_connected_with_boundary,
                    is_connected, vertex_set)
from .symmetry import (BlockSystem, enumerate_block_systems, full_cycle_positions, orbits,
                       violated_edge)


# -- finite cyclic systems ---------------------------------------------------------

@dataclass(frozen=True)
class CyclicSystem:
    system: BlockSystem
    order: tuple        # block indices in circular order
    gens: tuple

    @property
    def m(self) -> int:
        return len(self.order)

    @property
    def position(self) -> dict:
        return {b: i for i, b in enumerate(self.order)}

    def block_distance(self, b1: int, b2: int) -> int:
        pos = self.position
        d = abs(pos[b1] - pos[b2])
        return min(d, self.m - d)


def _order_automorphism(images: Sequence[int], m: int):
    """Return ``(shift, direction)`` if ``i -> images[i]`` is a dihedral map of Z_m."""
    c = images[0]
    for direction in (1, -1):
        if all(images[i] == (c + direction * i) % m for i in range(m)):
            return c, direction
    return None


def verify_cyclic_system(g: Graph, sys: BlockSystem, order, gens=None) -> CyclicSystem:
    """Check that ``order`` is a circuit on the blocks preserved by every generator."""
    gens = tuple(tuple(p) for p in (g.gens if gens is None else gens))
    if sys.n != g.n:
        raise CertificateError("block system does not match the graph")
    order = tuple(order)
    m = len(sys.blocks)
    if sorted(order) != list(range(m)):
        raise CertificateError("order must list every block exactly once")
    if m < 3:
        raise CertificateError("a circular order needs at least three blocks")
    pos = {b: i for i, b in enumerate(order)}
    for gi, p in enumerate(gens):
        bad = violated_edge(g, p)
        if bad is not None:
            raise CertificateError(f"generator {gi} is not an automorphism (edge {bad[0]}-{bad[1]})")
        try:
            act = sys.block_action(p)
        except SymmetryError:
            raise CertificateError(f"generator {gi} does not map blocks to blocks") from None
        images = [pos[act[order[i]]] for i in range(m)]
        if _order_automorphism(images, m) is None:
            for i in range(m):
                a, b = order[i], order[(i + 1) % m]
                pa, pb = pos[act[a]], pos[act[b]]
                if (pa - pb) % m not in (1, m - 1):
                    raise CertificateError(
                        f"generator {gi} breaks the order: adjacent blocks {a},{b} map to "
                        f"{act[a]},{act[b]}")
            raise CertificateError(f"generator {gi} does not preserve the order")  # pragma: no cover
    return CyclicSystem(sys, order, gens)


@dataclass(frozen=True)
class RingCertificate:
    cyclic: CyclicSystem
    s: int
    t: int
    tight: bool
    cohesive_q: Optional[int]

    @property
    def st(self) -> int:
        return self.s * self.t


def _neighborly(g: Graph, X, Y) -> bool:
    return (all(any(w in Y for w in g.adj[x]) for x in X)
            and all(any(w in X for w in g.adj[y]) for y in Y))


def _ring_parameters(g: Graph, cyc: CyclicSystem):
    sys = cyc.system
    s = sys.block_size
    if s is None:
        raise CertificateError("blocks have unequal sizes")
    pos, m = cyc.position, cyc.m
    t = 0
    for u, v in g.edges():
        d = abs(pos[sys.block_of[u]] - pos[sys.block_of[v]])
        t = max(t, min(d, m - d))
    return s, t


def _tight(g: Graph, cyc: CyclicSystem, t: int) -> bool:
    if t == 0:
        return True
    m, order, blocks = cyc.m, cyc.order, cyc.system.blocks
    for i in range(m):
        X = blocks[order[i]]
        Y = blocks[order[(i + t) % m]]
        if not _neighborly(g, X, Y):
            return False
    return True


def cohesiveness_index(g: Graph, cyc: CyclicSystem, transitive=None) -> int:
    """Least ``q`` joining any two vertices in equal or adjacent blocks by a path of length <= q.

    With transitivity evidence (the default when ``cyc.gens`` is transitive)
    one BFS from vertex 0 suffices, since the pair set is invariant.
    """
    if transitive is None:
        transitive = bool(cyc.gens) and len(orbits(g.n, cyc.gens)) == 1
    sys, pos, m, order = cyc.system, cyc.position, cyc.m, cyc.order
    sources = [0] if transitive else range(g.n)
    q = 0
    for x in sources:
        dist = bfs_distances(g, [x])
        i = pos[sys.block_of[x]]
        for j in (i - 1, i, i + 1):
            for y in sys.blocks[order[j % m]]:
                if dist[y] is None:
                    raise GraphError(f"vertices {x} and {y} are disconnected")
                q = max(q, dist[y])
    return q


def verify_ring_like(g: Graph, cyc: CyclicSystem, with_cohesion=True) -> RingCertificate:
    s, t = _ring_parameters(g, cyc)
    tight = _tight(g, cyc, t)
    q = cohesiveness_index(g, cyc) if with_cohesion else None
    return RingCertificate(cyc, s, t, tight, q)


def cyclic_orders(m: int, block_gens) -> list:
    """All circular orders of ``0..m-1`` preserved by the given permutations.

    The action must be transitive.  An invariant circuit is a union of at
    most two orbits of unordered pairs ``{0, b}``, so it suffices to compute
    those orbits (abandoning any with more than ``m`` pairs) and test the
    degree-2 and degree-1+1 combinations for being a single cycle.
    """
    if m < 3:
        return []
    gens = [tuple(p) for p in block_gens]
    seen_pairs = set()
    deg1, deg2 = [], []
    for b in range(1, m):
        key = (0, b)
        if key in seen_pairs:
            continue
        orbit = {key}
        queue = [key]
        too_big = False
        while queue and not too_big:
            x, y = queue.pop()
            for p in gens:
                a, c = p[x], p[y]
                e = (a, c) if a < c else (c, a)
                if e not in orbit:
                    orbit.add(e)
                    queue.append(e)
                    if len(orbit) > m:
                        too_big = True
                        break
        # pairs at 0 in this orbit need no recomputation either way
        seen_pairs.update(e for e in orbit if e[0] == 0)
        if too_big:
            continue
        if 2 * len(orbit) == m:
            deg1.append(orbit)
        elif len(orbit) == m:
            deg2.append(orbit)
    candidates = list(deg2)
    for i in range(len(deg1)):
        for j in range(i + 1, len(deg1)):
            candidates.append(deg1[i] | deg1[j])
    orders = []
    for edges in candidates:
        nbrs = [[] for _ in range(m)]
        for a, c in edges:
            nbrs[a].append(c)
            nbrs[c].append(a)
        if any(len(x) != 2 for x in nbrs):
            continue
        walk, prev, cur = [0], None, 0
        while True:
            nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
            if nxt == 0:
                break
            walk.append(nxt)
            prev, cur = cur, nxt
        if len(walk) == m:
            orders.append(tuple(walk))
    return orders


def _preserves_circle(order, block_gens) -> bool:
    m = len(order)
    pos = [0] * m
    for i, b in enumerate(order):
        pos[b] = i
    for p in block_gens:
        for i in range(m):
            d = (pos[p[order[i]]] - pos[p[order[(i + 1) % m]]]) % m
            if d not in (1, m - 1):
                return False
    return True


def _system_orders(g: Graph, sys: BlockSystem, block_gens, max_t: Optional[int] = None) -> list:
    """Circular block orders preserved by ``block_gens``, optionally only those with ``t <= max_t``.

    When a generator cycles through all blocks, every preserved order is a
    step-``b`` walk along that cycle with ``b`` a unit mod ``m``, and its
    ``t`` is read off from the blocks adjacent to block 0 alone.
    """
    m = len(sys.blocks)
    lab = full_cycle_positions(m, block_gens) if m >= 3 else None
    if lab is None:
        orders = cyclic_orders(m, block_gens)
        if max_t is None:
            return orders
        return [o for o in orders
                if _ring_parameters(g, CyclicSystem(sys, o, ()))[1] <= max_t]
    by_label = [0] * m
    for blk, i in enumerate(lab):
        by_label[i] = blk
    near = {lab[sys.block_of[w]] for v in sys.blocks[0] for w in g.adj[v]}
    orders = []
    for b in range(1, m // 2 + 1):
        if gcd(b, m) != 1:
            continue
        inv = pow(b, -1, m)
        t = max((min(x * inv % m, m - x * inv % m) for x in near), default=0)
        if max_t is not None and t > max_t:
            continue
        order = tuple(by_label[j * b % m] for j in range(m))
        if _preserves_circle(order, block_gens):
            orders.append(order)
    return orders


def _prepare_systems(g: Graph, gens, complete, systems):
    gens = [tuple(p) for p in (g.gens if gens is None else gens)]
    if not gens or len(orbits(g.n, gens)) != 1:
        raise SymmetryError("ring detection needs transitive generator evidence")
    if systems is None:
        systems = enumerate_block_systems(g.n, gens, complete=complete)
    return gens, sorted(systems, key=lambda s: (len(s.blocks[0]), s.block_of))


def ring_candidates(g: Graph, gens=None, complete=False, systems=None,
                    max_st: Optional[int] = None) -> list:
    """Every ``(cyclic system, s, t, tight)`` over the given block systems.

    Sorted by ``(s*t, not tight, t)``.  With ``complete`` all block systems
    of the generated group are examined, so an empty answer is definitive
    for that group.
    """
    gens, systems = _prepare_systems(g, gens, complete, systems)
    out = []
    for sys in systems:
        m = len(sys.blocks)
        if m < 3 or (max_st is not None and g.n // m > max_st):
            continue
        block_gens = [sys.block_action(p) for p in gens]
        max_t = None if max_st is None else max_st // (g.n // m)
        for order in _system_orders(g, sys, block_gens, max_t):
            cyc = CyclicSystem(sys, order, tuple(gens))
            s_, t = _ring_parameters(g, cyc)
            if max_st is not None and s_ * t > max_st:
                continue
            out.append((cyc, s_, t, _tight(g, cyc, t)))
    out.sort(key=lambda r: (r[1] * r[2], not r[3], r[2], r[0].system.block_of, r[0].order))
    return out


def detect_ring(g: Graph, gens=None, max_t: Optional[int] = None, complete=False,
                with_cohesion=True, systems=None) -> Optional[RingCertificate]:
    """Search for a ring-like structure with minimal ``s*t``.

    Iterates over block systems (minimal ones, or all with ``complete``) and
    every circular order of the blocks preserved by ``gens``; certificates are
    always re-verified.  Among valid ones the smallest ``s*t`` wins, tight
    certificates preferred on ties.  Returns ``None`` if nothing qualifies.
    """
    gens, systems = _prepare_systems(g, gens, complete, systems)
    best = None
    for sys in systems:
        m = len(sys.blocks)
        if m < 3:
            continue
        if best is not None and g.n // m > best[1][0]:
            # t >= 1 so s*t >= s; nothing later can improve on the incumbent
            break
        block_gens = [sys.block_action(p) for p in gens]
        for order in _system_orders(g, sys, block_gens, max_t):
            cyc = CyclicSystem(sys, order, tuple(gens))
            s_, t = _ring_parameters(g, cyc)
            if max_t is not None and t > max_t:
                continue
            tight = _tight(g, cyc, t)
            key = (s_ * t, not tight, t)
            if best is None or key < best[1]:
                best = (s_, key, cyc, t, tight)
    if best is None:
        return None
    _, _, cyc, t, tight = best
    return certify_ring(g, cyc, with_cohesion)


def certify_ring(g: Graph, cyc: CyclicSystem, with_cohesion=True) -> RingCertificate:
    """Re-verify a cyclic system from scratch and package its parameters."""
    cyc = verify_cyclic_system(g, cyc.system, cyc.order, cyc.gens)
    return verify_ring_like(g, cyc, with_cohesion)


@dataclass(frozen=True)
class IntervalCover:
    J: tuple            # block indices in order
    Q: frozenset
    excess: int
    k: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.excess <= self.bound


def interval_cover(g: Graph, cert: RingCertificate, A, check_pre=True) -> Optional[IntervalCover]:
    """Smallest interval of blocks whose union contains ``A``.

    The excess ``|Q - A|`` is compared with ``2 s^2 t^2 k + 2 s t k`` where
    ``k = |∂A|``.  Returns ``None`` when every block meets ``A`` (no proper
    interval covers it).
    """
    A = vertex_set(g, A)
    if not A:
        raise GraphError("empty set")
    if check_pre:
        if 2 * len(A) > g.n:
            raise GraphError("|A| exceeds half the vertex set")
        if not check_connected_with_boundary(g, A):
            raise GraphError("A together with its boundary is not connected")
    cyc = cert.cyclic
    sys, pos, m = cyc.system, cyc.position, cyc.m
    hit = sorted({pos[sys.block_of[v]] for v in A})
    if len(hit) == m:
        return None
    # complement of the largest circular gap between consecutive hit positions
    best_gap, start = -1, None
    for idx, p in enumerate(hit):
        nxt = hit[(idx + 1) % len(hit)]
        gap = (nxt - p - 1) % m if len(hit) > 1 else m - 1
        if gap > best_gap:
            best_gap, start = gap, nxt
    length = m - best_gap
    J = tuple(cyc.order[(start + i) % m] for i in range(length))
    Q = frozenset().union(*(sys.blocks[b] for b in J))
    k = len(boundary(g, A))
    s, t = cert.s, cert.t
    bound = 2 * s * s * t * t * k + 2 * s * t * k
    return IntervalCover(J, Q, len(Q - A), k, bound)


# -- periodic presentations ------------------------------------------------------

def check_periodic_automorphism(p: PeriodicPresentation, a: PeriodicAutomorphism) -> None:
    c = p.c
    if sorted(a.perm) != list(range(c)) or len(a.offset) != c or a.sign not in (1, -1):
        raise CertificateError("malformed periodic automorphism")
    arcs = p.arc_set()
    for u, v, d in arcs:
        img = (a.perm[u], a.perm[v], a.sign * d + a.offset[v] - a.offset[u])
        if img not in arcs:
            raise CertificateError(f"map sends arc ({u},{v},{d}) to non-arc {img}")


def shift_type(p: PeriodicPresentation, gens=None):
    """Classify by the orbits of end-preserving automorphisms.

    Returns ``(type, tau, transitive)`` where ``tau`` is the partition of cell
    vertices into shift classes (relative to the supplied generators plus the
    layer translation).
    """
    gens = list(p.gens if gens is None else gens)
    for a in gens:
        check_periodic_automorphism(p, a)
    c = p.c
    ident = (tuple(range(c)), 1)
    group = {ident}
    queue = [ident]
    while queue:
        perm, sign = queue.pop()
        for a in gens:
            nxt = (tuple(a.perm[perm[v]] for v in range(c)), sign * a.sign)
            if nxt not in group:
                group.add(nxt)
                queue.append(nxt)
    shifts = [perm for perm, sign in group if sign == 1]
    tau = orbits(c, shifts)
    full = orbits(c, [perm for perm, _ in group])
    return len(tau), tau, len(full) == 1


@dataclass(frozen=True)
class PeriodicRingCertificate:
    period: int
    offset: tuple
    s: int
    t: int
    tight: bool
    cohesive_q: Optional[int]
    gens: tuple = ()

    @property
    def st(self) -> int:
        return self.s * self.t

    def block(self, v: int, i: int) -> int:
        return self.period * i + self.offset[v]


def _periodic_parameters(p: PeriodicPresentation, period: int, offset):
    counts = [0] * period
    for v in range(p.c):
        counts[offset[v] % period] += 1
    if len(set(counts)) != 1 or counts[0] == 0:
        return None
    s = counts[0]
    t = 0
    for u, v, d in p.arc_set():
        t = max(t, abs(period * d + offset[v] - offset[u]))
    return s, t


def _periodic_tight(p: PeriodicPresentation, period, offset, t) -> bool:
    if t == 0:
        return True
    arcs = p.arc_set()
    spans = {v: set() for v in range(p.c)}
    for u, v, d in arcs:
        spans[u].add(period * d + offset[v] - offset[u])
    return all(t in spans[v] and -t in spans[v] for v in range(p.c))


def _preserves_order(a: PeriodicAutomorphism, period, offset) -> bool:
    consts = {period * a.offset[v] + offset[a.perm[v]] - a.sign * offset[v] for v in range(len(offset))}
    return len(consts) == 1


def periodic_cohesiveness(p: PeriodicPresentation, period: int, offset, max_half=400) -> int:
    """Cohesiveness index, computed on windows grown until distances are exact.

    A shortest path of length ``q`` moves at most ``q * max_jump`` layers, so
    window distances are exact once the window extends that far past the
    vertices involved.
    """
    c, M = p.c, max(p.max_jump, 1)
    members = {}
    for b in range(-1, period + 1):
        for v in range(c):
            if (b - offset[v]) % period == 0:
                members.setdefault(b, []).append((v, (b - offset[v]) // period))
    reach = max(abs(i) for pts in members.values() for _, i in pts)
    H = reach + 2 * M + 2
    while H <= max_half:
        w = window(p, H)
        vid = lambda v, i: (i + H) * c + v
        q = 0
        for j in range(period):
            for v, i in members.get(j, []):
                dist = bfs_distances(w.graph, [vid(v, i)])
                for jj in (j - 1, j, j + 1):
                    for y in members.get(jj, []):
                        d = dist[vid(*y)]
                        q = max(q, d if d is not None else 2 * H * c)
        if H >= reach + q * M + 1:
            return q
        H *= 2
    raise GraphError("cohesiveness did not stabilise within the window budget")


def periodic_ring(p: PeriodicPresentation, period: int, offset, gens=None,
                  with_cohesion=True) -> PeriodicRingCertificate:
    """Certify the linear block order ``block(v, i) = period*i + offset[v]``."""
    gens = tuple(p.gens if gens is None else gens)
    offset = tuple(offset)
    if period < 1 or len(offset) != p.c:
        raise CertificateError("bad period or offset vector")
    params = _periodic_parameters(p, period, offset)
    if params is None:
        raise CertificateError("blocks have unequal sizes")
    for a in gens:
        check_periodic_automorphism(p, a)
        if not _preserves_order(a, period, offset):
            raise CertificateError(f"automorphism {a} does not preserve the block order")
    s, t = params
    tight = _periodic_tight(p, period, offset, t)
    q = periodic_cohesiveness(p, period, offset) if with_cohesion else None
    return PeriodicRingCertificate(period, offset, s, t, tight, q, gens)


def detect_periodic_ring(p: PeriodicPresentation, gens=None, max_cell=6,
                         with_cohesion=True) -> Optional[PeriodicRingCertificate]:
    """Exhaustive search over block orders ``period*i + offset[v]`` with ``offset[v] < period``.

    Only orders preserved by the generators count.  Picks the tight order
    with the smallest ``s*t`` (non-tight only if no tight one exists).
    """
    gens = tuple(p.gens if gens is None else gens)
    for a in gens:
        check_periodic_automorphism(p, a)
    c = p.c
    best = None
    for period in range(1, c + 1):
        if c % period:
            continue
        if period > 1 and c > max_cell:
            break
        for offset in product(range(period), repeat=c):
            if period > 1 and offset[0] != 0:
                continue  # translating offsets relabels blocks
            params = _periodic_parameters(p, period, offset)
            if params is None:
                continue
            if not all(_preserves_order(a, period, offset) for a in gens):
                continue
            s, t = params
            if t == 0:
                continue
            tight = _periodic_tight(p, period, offset, t)
            key = (not tight, s * t, period)
            if best is None or key < best[0]:
                best = (key, period, offset)
    if best is None:
        return None
    return periodic_ring(p, best[1], best[2], gens, with_cohesion)


# -- kappa-infinity --------------------------------------------------------------

def _min_vertex_cut(g: Graph, sources, sinks):
    """Max number of internally vertex-disjoint paths and a minimum cut.

    Source and sink vertices are uncuttable; every other vertex has capacity 1.
    """
    n = g.n
    INF = n + 1
    # node 2v = v_in, 2v+1 = v_out; S = 2n, T = 2n+1
    S, T = 2 * n, 2 * n + 1
    N = 2 * n + 2
    head, cap, nxt_edge, first = [], [], [], [-1] * N

    def add(u, v, c):
        for a, b, cc in ((u, v, c), (v, u, 0)):
            head.append(b)
            cap.append(cc)
            nxt_edge.append(first[a])
            first[a] = len(head) - 1

    src, snk = set(sources), set(sinks)
    for v in range(n):
        add(2 * v, 2 * v + 1, INF if v in src or v in snk else 1)
    for u, v in g.edges():
        add(2 * u + 1, 2 * v, INF)
        add(2 * v + 1, 2 * u, INF)
    for v in src:
        add(S, 2 * v, INF)
    for v in snk:
        add(2 * v + 1, T, INF)
    flow = 0
    while True:
        prev = [-1] * N
        prev[S] = -2
        q = deque([S])
        while q and prev[T] == -1:
            u = q.popleft()
            e = first[u]
            while e != -1:
                if cap[e] > 0 and prev[head[e]] == -1:
                    prev[head[e]] = e
                    q.append(head[e])
                e = nxt_edge[e]
        if prev[T] == -1:
            break
        v = T
        while v != S:
            e = prev[v]
            cap[e] -= 1
            cap[e ^ 1] += 1
            v = head[e ^ 1]
        flow += 1
        if flow >= INF:
            raise GraphError("sources and sinks cannot be separated")
    reach = set()
    q = deque([S])
    reach.add(S)
    while q:
        u = q.popleft()
        e = first[u]
        while e != -1:
            if cap[e] > 0 and head[e] not in reach:
                reach.add(head[e])
                q.append(head[e])
            e = nxt_edge[e]
    cut = frozenset(v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach)
    return flow, cut


@dataclass(frozen=True)
class KappaResult:
    value: int
    cut: tuple          # (cell vertex, layer) pairs
    half_width: int
    history: tuple


def kappa_infinity(p: PeriodicPresentation, start: Optional[int] = None,
                   max_half_width: int = 200) -> KappaResult:
    """Smallest vertex set separating the two ends, by max-flow on growing windows.

    Far-left and far-right groups of ``max_jump`` consecutive layers act as
    source and sink (no path can skip them).  Accepts the value once two
    consecutive window sizes agree.
    """
    M = max(p.max_jump, 1)
    L = start if start is not None else 3 * M + 2
    step = max(2, M)
    probe = window(p, L)
    if not is_connected(probe.graph):
        raise GraphError("presentation is not connected (checked on a window)")
    history, prev = [], None
    while L <= max_half_width:
        w = window(p, L)
        lay = w.layer_of
        src = [x for x in range(w.graph.n) if lay[x] < -L + M]
        snk = [x for x in range(w.graph.n) if lay[x] > L - M]
        value, cut = _min_vertex_cut(w.graph, src, snk)
        history.append((L, value))
        if prev is not None and prev == value:
            labels = tuple(sorted((x % p.c, lay[x]) for x in cut))
            if any(abs(i) > L - M for _, i in labels):  # pragma: no cover - sources are uncuttable
                raise GraphError("cut touches the frontier")
            return KappaResult(value, labels, L, tuple(history))
        prev = value
        L += step
    raise GraphError("cut did not stabilize")
