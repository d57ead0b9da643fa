"""Tubes: sets whose boundary splits into two tight, far-apart sides."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CertificateError, GraphError
from .graph import (Graph, bfs_distances, boundary, check_connected_with_boundary,
                    components, depth, vertex_set)
from .uncrossing import RegionDecomposition, regions


@dataclass(frozen=True)
class TubeCertificate:
    A: frozenset
    L: frozenset
    R: frozenset
    s: int
    t: int


def _dist_rows(g: Graph, verts):
    return {v: bfs_distances(g, [v]) for v in verts}


def side_parameters(g: Graph, L, R) -> tuple:
    """Tight ``(s, t)`` for a given bipartition: max intra-side and min cross distance."""
    rows = _dist_rows(g, L | R)
    s = 0
    for side in (L, R):
        for x in side:
            for y in side:
                d = rows[x][y]
                if d is None:
                    raise CertificateError(f"boundary vertices {x} and {y} are disconnected")
                s = max(s, d)
    t = None
    for x in L:
        for y in R:
            d = rows[x][y]
            if d is not None and (t is None or d < t):
                t = d
    return s, t


def verify_tube(g: Graph, A, L, R, s: int, t: int) -> TubeCertificate:
    """Check that ``A`` is an ``(s, t)``-tube with boundary partition ``{L, R}``."""
    A, L, R = vertex_set(g, A), vertex_set(g, L), vertex_set(g, R)
    if not L or not R:
        raise CertificateError("empty side in boundary partition")
    dA = boundary(g, A)
    if L & R or (L | R) != dA:
        raise CertificateError("{L, R} does not partition the boundary of A")
    if not check_connected_with_boundary(g, A):
        raise CertificateError("A together with its boundary is not connected")
    rows = _dist_rows(g, L | R)
    for side, name in ((L, "L"), (R, "R")):
        for x in side:
            for y in side:
                d = rows[x][y]
                if d is None or d > s:
                    raise CertificateError(f"side {name}: dist({x},{y}) = {d} exceeds s = {s}")
    for x in L:
        for y in R:
            d = rows[x][y]
            if d is not None and d < t:
                raise CertificateError(f"dist({x},{y}) = {d} between sides is below t = {t}")
    return TubeCertificate(A, L, R, s, t)


def find_boundary_partition(g: Graph, A, s: int, t: int) -> Optional[tuple]:
    """Look for a boundary partition ``(L, R)`` of ``∂A`` making ``A`` an ``(s, t)``-tube.

    Single-linkage clustering of ``∂A`` at threshold ``s``; surplus clusters
    are merged closest-first down to two; the result is then validated.
    """
    A = vertex_set(g, A)
    dA = sorted(boundary(g, A))
    if len(dA) < 2:
        return None
    rows = _dist_rows(g, dA)
    parent = {v: v for v in dA}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, x in enumerate(dA):
        for y in dA[i + 1:]:
            d = rows[x][y]
            if d is not None and d <= s:
                parent[find(y)] = find(x)
    clusters = {}
    for v in dA:
        clusters.setdefault(find(v), set()).add(v)
    parts = sorted(clusters.values(), key=min)
    if len(parts) < 2:
        return None

    def gap(p, q):
        ds = [rows[x][y] for x in p for y in q if rows[x][y] is not None]
        return min(ds) if ds else float("inf")

    while len(parts) > 2:
        best = None
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                d = gap(parts[i], parts[j])
                if best is None or d < best[0]:
                    best = (d, i, j)
        _, i, j = best
        parts[i] = parts[i] | parts[j]
        del parts[j]
    L, R = frozenset(parts[0]), frozenset(parts[1])
    try:
        verify_tube(g, A, L, R, s, t)
    except CertificateError:
        return None
    return L, R


@dataclass(frozen=True)
class MergeStatus:
    regions: RegionDecomposition
    nonempty: dict
    sides1: bool
    sides2: bool
    U_empty: bool

    @property
    def merge(self) -> bool:
        return all(self.nonempty.values()) and self.sides1 and self.sides2


def merge_status(g: Graph, c1: TubeCertificate, c2: TubeCertificate) -> MergeStatus:
    """Which of the merge conditions hold for two tubes.

    The tubes merge when P, S, X, Z are nonempty, {Q, Y} = {L1, R1} and
    {T, W} = {L2, R2}; these force U to be empty.
    """
    dec = regions(g, c1.A, c2.A)
    nonempty = {name: bool(getattr(dec, name)) for name in "PSXZ"}
    sides1 = {dec.Q, dec.Y} == {c1.L, c1.R}
    sides2 = {dec.T, dec.W} == {c2.L, c2.R}
    return MergeStatus(dec, nonempty, sides1, sides2, not dec.U)


def merge_tubes(g: Graph, c1: TubeCertificate, c2: TubeCertificate) -> TubeCertificate:
    """The tube ``P∪Q∪S∪T∪X`` with boundary partition ``{Y, W}``, tight parameters."""
    st = merge_status(g, c1, c2)
    if not st.merge:
        raise CertificateError("tubes do not merge")
    dec = st.regions
    A = dec.P | dec.Q | dec.S | dec.T | dec.X
    L, R = dec.Y, dec.W
    s, t = side_parameters(g, L, R)
    return verify_tube(g, A, L, R, s, t)


@dataclass(frozen=True)
class BalloonReport:
    components: tuple   # (vertex set, depth) pairs
    threshold: int
    deep: tuple
    holds: bool
    truncated: tuple = ()


def balloon_check(g: Graph, X, y: int, k: int, frontier=frozenset()) -> BalloonReport:
    """Depths of the components of ``g - X`` when ``X`` lies within ``k`` of ``y``.

    Holds when at most one component has depth ``>= k + 2``.  Components
    meeting ``frontier`` (window boundaries) are reported but their depth is
    only a lower bound.
    """
    X = vertex_set(g, X)
    if not X:
        raise GraphError("X is empty: no separation")
    dist = bfs_distances(g, [y])
    for x in sorted(X):
        if dist[x] is None or dist[x] > k:
            raise GraphError(f"vertex {x} is at distance {dist[x]} > {k} from {y}")
    rest = set(range(g.n)) - X
    comps = components(g, rest)
    out = []
    for comp in comps:
        out.append((comp, depth(g, comp)))
    thr = k + 2
    deep = tuple(c for c, d in out if d >= thr)
    truncated = tuple(bool(c & frontier) for c, _ in out)
    return BalloonReport(tuple(out), thr, deep, len(deep) <= 1, truncated)
