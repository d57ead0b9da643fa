"""Exhaustive checkers for the classical isoperimetric bounds and sumsets.

Sets are handled as integer bitmasks.  For digraphs the vertex boundary in a
profile is the out-boundary and the edge cut counts arcs leaving the set.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BudgetExhausted, GraphError
from .generators import GroupTable
from .graph import Graph, bfs_distances
from .symmetry import require_transitive

UNRESTRICTED_LIMIT = 20
CONNECTED_LIMIT = 30


def _bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _masks(g: Graph):
    out_m = [0] * g.n
    und_m = [0] * g.n
    for u in range(g.n):
        for v in g.adj[u]:
            out_m[u] |= 1 << v
            und_m[u] |= 1 << v
            und_m[v] |= 1 << u
    return out_m, und_m


def _out_boundary(out_m, A: int) -> int:
    b = 0
    for v in _bits(A):
        b |= out_m[v]
    return b & ~A


def _edge_cut(out_m, A: int) -> int:
    return sum(bin(out_m[v] & ~A).count("1") for v in _bits(A))


def connected_sets(g: Graph, max_size: int, starts=None, budget: Optional[int] = None):
    """Yield every weakly connected vertex set of size ``<= max_size`` as a bitmask.

    Each set is produced once, from its least vertex, by extension-set
    enumeration over the underlying graph.
    """
    _, und = _masks(g)
    n = g.n
    count = [0]
    starts = range(n) if starts is None else starts

    def grow(sub, ext, excl, above, size):
        count[0] += 1
        if budget is not None and count[0] > budget:
            raise BudgetExhausted(f"search budget exhausted after {budget} sets")
        yield sub
        if size == max_size:
            return
        while ext:
            w = (ext & -ext).bit_length() - 1
            ext &= ~(1 << w)
            new = und[w] & above & ~excl
            yield from grow(sub | (1 << w), ext | new, excl | new, above, size + 1)

    for v in starts:
        above = ~((1 << (v + 1)) - 1) & ((1 << n) - 1)
        start_ext = und[v] & above
        yield from grow(1 << v, start_ext, (1 << v) | und[v], above, 1)


@dataclass(frozen=True)
class ProfileEntry:
    size: int
    min_vertex_boundary: int
    min_edge_cut: int
    witness: frozenset
    edge_witness: frozenset


def _profile_chunk(args):
    g, connected, exclude_full, max_size, starts, budget = args
    out_m, _ = _masks(g)
    full = (1 << g.n) - 1
    best_vb, best_ec = {}, {}
    if connected:
        sets = connected_sets(g, max_size, starts, budget)
    else:
        sets = range(1, full)
    for A in sets:
        size = bin(A).count("1")
        if size > max_size:
            continue
        b = _out_boundary(out_m, A)
        if exclude_full and (A | b) == full:
            continue
        vb = bin(b).count("1")
        ec = _edge_cut(out_m, A)
        for table, val in ((best_vb, vb), (best_ec, ec)):
            cur = table.get(size)
            if cur is None or val < cur[0] or (val == cur[0] and _key(A) < cur[1]):
                table[size] = (val, _key(A))
    return best_vb, best_ec


def _key(A: int) -> tuple:
    return tuple(_bits(A))


def min_boundary_profile(g: Graph, connected=True, exclude_full=False,
                         max_size: Optional[int] = None, budget: Optional[int] = None,
                         jobs: int = 1) -> list:
    """Exact per-size minima of the vertex boundary and edge cut.

    Sizes range over ``1..max_size`` (default ``n - 1``).  With
    ``exclude_full`` sets with ``A ∪ ∂A = V`` are skipped.  Witnesses are the
    lexicographically least minimisers, so output does not depend on ``jobs``.
    """
    n = g.n
    limit = CONNECTED_LIMIT if connected else UNRESTRICTED_LIMIT
    if n > limit:
        raise BudgetExhausted(f"{n} vertices exceeds the exhaustive limit of {limit}")
    max_size = n - 1 if max_size is None else min(max_size, n - 1)
    if max_size < 1:
        return []
    if connected and jobs > 1:
        chunks = [(g, True, exclude_full, max_size, list(range(j, n, jobs)), budget)
                  for j in range(jobs)]
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_profile_chunk, chunks))
    else:
        parts = [_profile_chunk((g, connected, exclude_full, max_size, None, budget))]
    best_vb, best_ec = {}, {}
    for pvb, pec in parts:
        for table, part in ((best_vb, pvb), (best_ec, pec)):
            for size, val in part.items():
                if size not in table or val < table[size]:
                    table[size] = val
    out = []
    for size in sorted(best_vb):
        vb, w1 = best_vb[size]
        ec, w2 = best_ec[size]
        out.append(ProfileEntry(size, vb, ec, frozenset(w1), frozenset(w2)))
    return out


def overall_minimum(profile: list, which: str = "vb"):
    """``(value, witness)`` minimising over all sizes."""
    if not profile:
        return None, frozenset()
    if which == "vb":
        e = min(profile, key=lambda e: (e.min_vertex_boundary, e.size))
        return e.min_vertex_boundary, e.witness
    e = min(profile, key=lambda e: (e.min_edge_cut, e.size))
    return e.min_edge_cut, e.edge_witness


def format_profile_tsv(profile: list) -> str:
    lines = ["size\tmin_vb\tmin_ec\twitness"]
    for e in profile:
        w = " ".join(map(str, sorted(e.witness)))
        lines.append(f"{e.size}\t{e.min_vertex_boundary}\t{e.min_edge_cut}\t{w}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BoundCheck:
    name: str
    observed: int
    bound: Fraction
    holds: bool
    tight: bool
    witness: frozenset


@dataclass(frozen=True)
class BoundReport:
    degree: int
    checks: tuple
    babai_szegedy_sets: int = 0
    babai_szegedy_violation: Optional[frozenset] = None
    babai_szegedy_tightest: Optional[tuple] = None   # (ratio slack, set)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)


def _ceil(x: Fraction) -> int:
    return -(-x.numerator // x.denominator)


def _distance_matrix(g: Graph) -> list:
    return [bfs_distances(g, [v]) for v in range(g.n)]


def bound_report(g: Graph, gens=None, budget: Optional[int] = None) -> BoundReport:
    """Check the connectivity bounds and the diameter bound exhaustively.

    The minima of ``|δA|``, ``|∂A|`` and ``|∂⁺A|`` are attained on connected
    sets (a component of a minimiser is again admissible with no larger
    boundary), so only connected sets are enumerated.
    """
    require_transitive(g, gens)
    if g.n > CONNECTED_LIMIT:
        raise BudgetExhausted(f"{g.n} vertices exceeds the exhaustive limit of {CONNECTED_LIMIT}")
    d = g.degree(0)
    if not g.is_regular():
        raise GraphError("graph is not regular")
    checks = []
    if g.directed:
        prof = min_boundary_profile(g, True, True, budget=budget)
        val, wit = overall_minimum(prof, "vb")
        bound = Fraction(d + 1, 2)
        if val is not None:
            checks.append(BoundCheck("hamidoune", val, bound, val >= bound, val == _ceil(bound), wit))
        return BoundReport(d, tuple(checks))
    prof_all = min_boundary_profile(g, True, False, budget=budget)
    val, wit = overall_minimum(prof_all, "ec")
    checks.append(BoundCheck("mader", val, Fraction(d), val >= d, val == d, wit))
    prof_ex = min_boundary_profile(g, True, True, budget=budget)
    val, wit = overall_minimum(prof_ex, "vb")
    if val is not None:
        bound = Fraction(2 * (d + 1), 3)
        checks.append(BoundCheck("watkins", val, bound, val >= bound, val == _ceil(bound), wit))
    # diameter bound, per set
    out_m, _ = _masks(g)
    dist = _distance_matrix(g)
    count, violation, tightest = 0, None, None
    for A in connected_sets(g, g.n // 2, budget=budget):
        verts = _bits(A)
        diam = max(dist[x][y] for x in verts for y in verts)
        vb = bin(_out_boundary(out_m, A)).count("1")
        count += 1
        slack = Fraction(vb, len(verts)) - Fraction(1, diam + 1)
        if slack < 0 and violation is None:
            violation = frozenset(verts)
        if tightest is None or slack < tightest[0]:
            tightest = (slack, frozenset(verts))
    checks.append(BoundCheck("babai_szegedy", count, Fraction(0), violation is None,
                             tightest is not None and tightest[0] == 0,
                             tightest[1] if tightest else frozenset()))
    return BoundReport(d, tuple(checks), count, violation, tightest)


# -- sumsets ---------------------------------------------------------------------

def sumset(tbl: GroupTable, A, B, side: str = "left") -> frozenset:
    """``{a*b}`` (``side='left'``) or ``{b*a}`` (``side='right'``)."""
    A, B = frozenset(A), frozenset(B)
    for x in A | B:
        if not 0 <= x < tbl.order:
            raise GraphError(f"element {x} not in the group")
    if side == "left":
        return frozenset(tbl.mul(a, b) for a in A for b in B)
    if side == "right":
        return frozenset(tbl.mul(b, a) for a in A for b in B)
    raise GraphError("side must be 'left' or 'right'")


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class CauchyDavenportReport:
    p: int
    pairs: int
    violations: tuple
    tight: int


def cauchy_davenport_check(p: int) -> CauchyDavenportReport:
    """Every pair of nonempty subsets of ``Z_p`` against ``min(p, |A|+|B|-1)``."""
    if not is_prime(p):
        raise GraphError(f"{p} is not prime")
    full = (1 << p) - 1
    pop = [bin(m).count("1") for m in range(full + 1)]

    def rot(m, b):
        return ((m << b) | (m >> (p - b))) & full

    violations, tight, pairs = [], 0, 0
    for A in range(1, full + 1):
        shifts = [rot(A, b) for b in range(p)]
        for B in range(1, full + 1):
            s = 0
            for b in _bits(B):
                s |= shifts[b]
            pairs += 1
            need = min(p, pop[A] + pop[B] - 1)
            if pop[s] < need:
                violations.append((tuple(_bits(A)), tuple(_bits(B))))
            elif pop[s] == need:
                tight += 1
    return CauchyDavenportReport(p, pairs, tuple(violations), tight)


# -- depth ratio explorer -----------------------------------------------------------

@dataclass(frozen=True)
class RatioReport:
    ratio: Fraction
    witness: frozenset
    boundary: int
    depth: int
    sets: int
    sampled: bool
    seed: Optional[int]
    by_size: tuple = ()     # (size, least ratio) pairs


def _random_connected_set(rng, und_adj, n, size):
    start = rng.randrange(n)
    A = {start}
    frontier = set(und_adj[start])
    while len(A) < size and frontier:
        v = rng.choice(sorted(frontier))
        A.add(v)
        frontier.discard(v)
        frontier.update(w for w in und_adj[v] if w not in A)
    return frozenset(A)


def depth_ratio_explorer(g: Graph, budget: int = 200_000, seed: int = 0,
                         max_size: Optional[int] = None, samples: int = 20_000) -> RatioReport:
    """Least ``|∂A| * depth(A) / |A|`` over connected ``A`` with ``|A| <= n/2``.

    Exhaustive when the number of connected sets fits in ``budget``;
    otherwise ``samples`` random connected sets are drawn and the report is
    flagged as sampled.  The value is an empirical minimum only.
    """
    h = g.underlying() if g.directed else g
    n = h.n
    max_size = n // 2 if max_size is None else min(max_size, n // 2)
    if max_size < 1:
        raise GraphError("graph too small")
    dist = _distance_matrix(h)
    out_m, _ = _masks(h)
    full = (1 << n) - 1

    def score(verts, mask):
        rest = _bits(full & ~mask)
        dep = max(min(dist[v][u] for u in rest) for v in verts)
        vb = bin(_out_boundary(out_m, mask)).count("1")
        return Fraction(vb * dep, len(verts)), vb, dep

    best, count, sampled = None, 0, False
    per_size = {}

    def note(size, r):
        if size not in per_size or r < per_size[size]:
            per_size[size] = r

    try:
        if n > 62:
            raise BudgetExhausted("too large for exhaustive enumeration")
        for mask in connected_sets(h, max_size, budget=budget):
            verts = _bits(mask)
            r, vb, dep = score(verts, mask)
            count += 1
            note(len(verts), r)
            key = (r, len(verts), tuple(verts))
            if best is None or key < best[0]:
                best = (key, vb, dep)
    except BudgetExhausted:
        sampled = True
        rng = random.Random(seed)
        best, count = None, 0
        per_size.clear()
        for _ in range(samples):
            size = rng.randint(1, max_size)
            A = _random_connected_set(rng, h.adj, n, size)
            verts = sorted(A)
            mask = sum(1 << v for v in verts)
            r, vb, dep = score(verts, mask)
            count += 1
            note(len(verts), r)
            key = (r, len(verts), tuple(verts))
            if best is None or key < best[0]:
                best = (key, vb, dep)
    (r, _, verts), vb, dep = best
    return RatioReport(r, frozenset(verts), vb, dep, count, sampled, seed if sampled else None,
                       tuple(sorted(per_size.items())))
