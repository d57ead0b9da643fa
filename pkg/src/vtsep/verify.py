"""End-to-end checkers for the separation dichotomy and its corollaries.

A ``VIOLATION`` outcome is a falsification report: it is only produced when
every hypothesis holds and every search involved ran to completion.
Incomplete searches give ``inconclusive``.
"""
from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import BudgetExhausted, GraphError, SymmetryError
from .generators import (GroupTable, PeriodicPresentation, WindowGraph, make_cayley, make_periodic,
                         window, window_id)
from .graph import (Graph, ball, ball_growth, bfs_distances, boundary, boundary_profile,
                    check_connected_with_boundary, depth, diameter, diameter_of_set, vertex_set)
from .ringstruct import (RingCertificate, cohesiveness_index, detect_periodic_ring, detect_ring,
                         interval_cover, ring_candidates)
from .symmetry import enumerate_block_systems, require_transitive
from .treewidth import TreeDecomposition, greedy_td_search, verify_td


def diameter_threshold(k: int) -> int:
    return 31 * (k + 1) ** 2


# -- main dichotomy -----------------------------------------------------------------

@dataclass(frozen=True)
class DichotomyOutcome:
    case: str
    k: int
    size: int
    depth: Optional[int] = None
    degree: Optional[int] = None
    diameter: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None
    excess: Optional[int] = None
    interval: Optional[tuple] = None
    reason: str = ""
    relaxed: bool = False
    ring: Optional[RingCertificate] = field(default=None, repr=False)

    @property
    def cases(self) -> tuple:
        return tuple(c for c in self.case.split("+") if c in ("shallow", "ring_interval"))


def _shallow(k, size, dep, d) -> bool:
    return dep <= k and size <= 2 * k ** 3 + k ** 2 and 2 * d <= 3 * k - 2


def _ring_case(g, A, k, rings, bound2):
    """First ring with ``2st <= k`` whose covering interval has ``2*excess <= bound2``."""
    for cyc, s, t, tight in rings:
        if 2 * s * t > k:
            continue
        cert = RingCertificate(cyc, s, t, tight, None)
        cover = interval_cover(g, cert, A, check_pre=False)
        if cover is not None and 2 * cover.excess <= bound2:
            return cert, cover
    return None, None


def main_dichotomy(g: Graph, gens, A, rings=None, rings_complete=False,
                   diam: Optional[int] = None, relax_diameter=False,
                   gens_checked=False) -> DichotomyOutcome:
    """Classify ``A`` into the shallow case, the ring-interval case, or both.

    ``rings`` may be a precomputed output of ``ring_candidates``; otherwise
    every block system is searched.  With ``relax_diameter`` the diameter
    hypothesis is skipped and failures are reported as ``unsupported``.
    ``gens_checked`` skips re-validating generators a caller already checked.
    """
    if g.directed:
        raise GraphError("main_dichotomy expects an undirected graph")
    if not gens_checked:
        gens = require_transitive(g, gens)
    A = vertex_set(g, A)
    if not A:
        raise GraphError("A must be nonempty")
    k = len(boundary(g, A))
    size = len(A)
    d = g.degree(0)
    if diam is None:
        diam = diameter(g, transitive=True)
    base = dict(k=k, size=size, degree=d, diameter=diam, relaxed=relax_diameter)
    if 2 * size > g.n:
        return DichotomyOutcome("precondition_failed", reason="|A| exceeds half the vertex set", **base)
    if not check_connected_with_boundary(g, A):
        return DichotomyOutcome("precondition_failed", reason="A together with its boundary is not connected", **base)
    if not relax_diameter and diam < diameter_threshold(k):
        return DichotomyOutcome("precondition_failed",
                                reason=f"diameter {diam} below {diameter_threshold(k)}", **base)
    dep = depth(g, A)
    cases = []
    if _shallow(k, size, dep, d):
        cases.append("shallow")
    if rings is None:
        rings = ring_candidates(g, gens, complete=True, max_st=k // 2)
        rings_complete = True
    cert, cover = _ring_case(g, A, k, rings, k ** 3 + 2 * k ** 2)
    if cert is not None:
        cases.append("ring_interval")
    extra = {}
    if cert is not None:
        extra = dict(s=cert.s, t=cert.t, excess=cover.excess, interval=cover.J, ring=cert)
    if cases:
        return DichotomyOutcome("+".join(cases), depth=dep, **extra, **base)
    if relax_diameter:
        return DichotomyOutcome("unsupported", depth=dep, reason="neither case holds without the diameter hypothesis", **base)
    if not rings_complete:
        return DichotomyOutcome("inconclusive", depth=dep, reason="ring search incomplete", **base)
    return DichotomyOutcome("VIOLATION", depth=dep,
                            reason="hypotheses hold but neither case verifies", **base)


TSV_HEADER = "candidate_id\tcase\tk\tdepth\t|A|\ts\tt\texcess"


def outcome_tsv(cid: int, o: DichotomyOutcome) -> str:
    cell = lambda x: "-" if x is None else str(x)
    return "\t".join([str(cid), o.case, str(o.k), cell(o.depth), str(o.size),
                      cell(o.s), cell(o.t), cell(o.excess)])


@dataclass
class ScanSummary:
    rows: list
    counts: Counter
    candidates: list = field(repr=False, default_factory=list)
    violation: Optional[tuple] = None
    exhausted: bool = False
    seed: int = 0

    @property
    def ok(self) -> bool:
        return self.violation is None

    def tsv(self) -> str:
        return "\n".join([TSV_HEADER] + [outcome_tsv(i, o) for i, o in self.rows]) + "\n"


def scan_candidates(g: Graph, gens, k_max: int, seed: int = 0, random_perturbations: int = 50,
                    systems=None) -> list:
    """Block intervals, their one-vertex perturbations, and balls.

    Only connected-with-boundary sets with ``|∂A| <= k_max`` and
    ``|A| <= n/2`` are kept, in a deterministic order.
    """
    out, seen = [], set()

    def offer(A):
        A = frozenset(A)
        if not A or A in seen or 2 * len(A) > g.n:
            return
        seen.add(A)
        if len(boundary(g, A)) <= k_max and check_connected_with_boundary(g, A):
            out.append(A)

    r = 0
    while True:
        B = ball(g, 0, r)
        if 2 * len(B) > g.n:
            break
        offer(B)
        r += 1
    ring = detect_ring(g, gens, with_cohesion=False, systems=systems)
    if ring is not None:
        cyc = ring.cyclic
        blocks, order, m = cyc.system.blocks, cyc.order, cyc.m
        intervals = []
        Q = frozenset()
        for length in range(1, m // 2 + 1):
            Q = Q | blocks[order[length - 1]]
            intervals.append(Q)
            offer(Q)
            first, nxt = blocks[order[0]], blocks[order[length % m]]
            last, prev = blocks[order[length - 1]], blocks[order[-1]]
            for v in sorted(first | last):
                offer(Q - {v})
            for v in sorted(nxt | prev):
                offer(Q | {v})
        rng = random.Random(seed)
        verts = list(range(g.n))
        for _ in range(random_perturbations):
            if not intervals:
                break
            Q = set(rng.choice(intervals))
            for _ in range(rng.randint(1, 2)):
                v = rng.choice(verts)
                Q.symmetric_difference_update({v})
            offer(Q)
    return out


def _scan_chunk(args):
    g, gens, chunk, rings, diam, relax = args
    return [(cid, main_dichotomy(g, gens, A, rings, True, diam, relax, gens_checked=True))
            for cid, A in chunk]


def scan_main(g: Graph, gens, k_max: int, budget: Optional[int] = None, jobs: int = 1,
              seed: int = 0, relax_diameter=False) -> ScanSummary:
    """Run ``main_dichotomy`` over generated candidates; stop at the first violation."""
    gens = require_transitive(g, gens)
    systems = enumerate_block_systems(g.n, gens, complete=True)
    cands = scan_candidates(g, gens, k_max, seed, systems=systems)
    exhausted = False
    if budget is not None and len(cands) > budget:
        cands, exhausted = cands[:budget], True
    rings = ring_candidates(g, gens, systems=systems, max_st=k_max // 2)
    diam = diameter(g, transitive=True)
    indexed = list(enumerate(cands))
    if jobs > 1 and indexed:
        size = -(-len(indexed) // jobs)
        chunks = [(g, gens, indexed[i:i + size], rings, diam, relax_diameter)
                  for i in range(0, len(indexed), size)]
        with ProcessPoolExecutor(jobs) as ex:
            results = [r for part in ex.map(_scan_chunk, chunks) for r in part]
    else:
        results = _scan_chunk((g, gens, indexed, rings, diam, relax_diameter))
    rows, counts, violation = [], Counter(), None
    for cid, o in results:
        rows.append((cid, o))
        counts[o.case] += 1
        if o.case == "VIOLATION":
            violation = (cid, cands[cid], o)
            break
    return ScanSummary(rows, counts, cands, violation, exhausted, seed)


# -- Lemma-level checks --------------------------------------------------------------

def diam_depth_check(g: Graph, A):
    """``(diam(A), |∂A|*(2*depth(A)+1), holds)`` or ``None`` when not applicable."""
    A = vertex_set(g, A)
    if not A or len(A) == g.n or not check_connected_with_boundary(g, A):
        return None
    dA = diameter_of_set(g, A)
    bound = len(boundary(g, A)) * (2 * depth(g, A) + 1)
    return dA, bound, dA < bound


def diam_depth_part2(g: Graph, A, d: int, k: int, ell: int, m: int, diam: Optional[int] = None):
    """Whether the large-set depth bound applies, and if so whether ``depth(A) >= d+1``."""
    A = vertex_set(g, A)
    diam = diameter(g, transitive=True) if diam is None else diam
    applies = (len(boundary(g, A)) <= k and diam >= m * k * (2 * d + 1) + ell - d + 1
               and m * len(A) >= g.n - 2 * ell and len(A) < g.n)
    if not applies:
        return None
    return depth(g, A) >= d + 1


def get_ring_check(g: Graph, gens, A, diam: Optional[int] = None):
    """If the deep-set hypotheses hold, look for a ``2st``-cohesive ring with ``2st <= k``.

    Returns ``None`` when not applicable, else ``(certificate or None, complete)``.
    """
    gens = require_transitive(g, gens)
    A = vertex_set(g, A)
    k = len(boundary(g, A))
    diam = diameter(g, transitive=True) if diam is None else diam
    rest = frozenset(range(g.n)) - A - boundary(g, A)
    if not A or not rest or diam < diameter_threshold(k):
        return None
    if depth(g, A) < k + 1 or depth(g, rest) < k + 1:
        return None
    for cyc, s, t, tight in ring_candidates(g, gens, complete=True, max_st=k // 2):
        if 2 * s * t <= k:
            q = cohesiveness_index(g, cyc)
            if q <= 2 * s * t:
                return RingCertificate(cyc, s, t, tight, q), True
    return None, True


# -- growth ------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthReport:
    growth: tuple
    growth_ok: bool
    first_failure: Optional[int]
    ring: object
    clause: tuple       # (n, depth, |∂A|, satisfied) for balls with depth > |∂A|
    center: int

    @property
    def holds(self) -> bool:
        return (self.growth_ok or self.ring is not None) and all(c[3] for c in self.clause)


def _ring_for_clause(ring, k) -> bool:
    return ring is not None and 2 * ring.st <= k


def growth_cor17(obj, n_max: int, center: Optional[int] = None, gens=None) -> GrowthReport:
    """Check ``b(n) > n(n+1)/2`` for ``n <= n_max`` or exhibit a ring certificate.

    Accepts a finite vertex-transitive ``Graph``, a ``WindowGraph`` proxy of
    an infinite graph, or a ``PeriodicPresentation``.  Balls ``B(x, n)`` with
    ``depth > |∂|`` must come with a ring of ``st <= |∂|/2``.
    """
    if n_max < 0:
        raise GraphError("n_max must be nonnegative")
    ring = None
    finite = False
    if isinstance(obj, PeriodicPresentation):
        ring = detect_periodic_ring(obj, gens)
        M = max(obj.max_jump, 1)
        L = (n_max + 2) * M + M + 1
        center = window_id(obj, L, 0, 0) if center is None else center
        obj = window(obj, L)
    if isinstance(obj, WindowGraph):
        g = obj.graph
        if obj.frontier:
            df = bfs_distances(g, obj.frontier)
        else:
            df = [None] * g.n
        if center is None:
            center = min(range(g.n), key=lambda v: (-(df[v] if df[v] is not None else g.n), v))
        if df[center] is not None and df[center] <= n_max + 1:
            raise GraphError(f"frontier contamination: the ball of radius {n_max + 1} about "
                             f"{center} reaches the window frontier")
    else:
        g = obj
        finite = True
        if gens is not None or g.gens:
            require_transitive(g, gens)
        center = 0 if center is None else center
    b = ball_growth(g, center, n_max + 1)
    fail = next((n for n in range(n_max + 1) if 2 * b[n] <= n * (n + 1)), None)
    if fail is not None and ring is None and finite:
        ring = detect_ring(g, gens, with_cohesion=False)
    clause = []
    for n in range(n_max + 1):
        A = ball(g, center, n)
        if finite and 2 * len(A) > g.n:
            break
        k = b[n + 1] - b[n]
        dep = n + 1
        if dep > k:
            if finite and (ring is None or 2 * ring.st > k):
                cands = ring_candidates(g, gens, complete=True, max_st=k // 2)
                ok = any(2 * s * t <= k for _, s, t, _ in cands)
            else:
                ok = _ring_for_clause(ring, k)
            clause.append((n, dep, k, ok))
    return GrowthReport(tuple(b[:n_max + 1]), fail is None, fail, ring, tuple(clause), center)


# -- Eulerian digraphs ------------------------------------------------------------------

def check_eulerian(dg: Graph) -> None:
    if not dg.directed:
        raise GraphError("expected a directed graph")
    for v in range(dg.n):
        i, o = len(dg.in_adj[v]), len(dg.adj[v])
        if i != o:
            raise GraphError(
                f"digraph is not Eulerian: vertex {v} has in-degree {i} and out-degree {o}; "
                "without this hypothesis a directed path B can have |∂⁺B| = 1 with |B| unbounded")


@dataclass(frozen=True)
class EulerianOutcome:
    case: str
    k: int
    size: int
    undirected_k: Optional[int] = None
    chain_ok: Optional[bool] = None
    route: str = ""
    s: Optional[int] = None
    t: Optional[int] = None
    excess: Optional[int] = None
    reason: str = ""


def eulerian_cor110(dg: Graph, gens, A, rings=None, rings_complete=False) -> EulerianOutcome:
    """Dichotomy for Eulerian transitive digraphs with ``k = |∂⁺A|``.

    The diameter hypothesis is met either with the corollary's own threshold
    ``31(2k^2+1)^2`` or with the undirected threshold ``31(|∂A|+1)^2``; in
    both routes ``|∂A| <= 2k^2`` carries the undirected bounds over.
    """
    check_eulerian(dg)
    gens = require_transitive(dg, gens)
    A = vertex_set(dg, A)
    if not A:
        raise GraphError("A must be nonempty")
    g = dg.underlying()
    prof = boundary_profile(dg, A)
    k = len(prof.out_boundary)
    K = len(boundary(g, A))
    size = len(A)
    base = dict(k=k, size=size, undirected_k=K)
    if 2 * size > dg.n:
        return EulerianOutcome("precondition_failed", reason="|A| exceeds half the vertex set", **base)
    if not check_connected_with_boundary(g, A):
        return EulerianOutcome("precondition_failed", reason="A together with its boundary is not connected", **base)
    diam = diameter(g, transitive=True)
    if diam >= diameter_threshold(2 * k * k):
        route = "corollary"
    elif diam >= diameter_threshold(K):
        route = "undirected"
    else:
        return EulerianOutcome("precondition_failed",
                               reason=f"diameter {diam} below {diameter_threshold(2 * k * k)} "
                                      f"and below {diameter_threshold(K)}", **base)
    chain_ok = K <= 2 * k * k
    base.update(chain_ok=chain_ok, route=route)
    cases = []
    if size <= 16 * k ** 6 + 4 * k ** 4:
        cases.append("small")
    if rings is None:
        rings = ring_candidates(g, gens, complete=True, max_st=k * k)
        rings_complete = True
    extra = {}
    for cyc, s, t, tight in rings:
        if s * t > k * k:
            continue
        cover = interval_cover(g, RingCertificate(cyc, s, t, tight, None), A, check_pre=False)
        if cover is not None and cover.excess <= 4 * k ** 6 + 4 * k ** 4:
            cases.append("ring_interval")
            extra = dict(s=s, t=t, excess=cover.excess)
            break
    if cases:
        return EulerianOutcome("+".join(cases), **extra, **base)
    if not rings_complete:
        return EulerianOutcome("inconclusive", reason="ring search incomplete", **base)
    return EulerianOutcome("VIOLATION", reason="hypotheses hold but neither case verifies", **base)


# -- tree-width trichotomy ---------------------------------------------------------------

@dataclass(frozen=True)
class Cor19Outcome:
    status: str                 # ok | VIOLATION | inconclusive
    outcomes: tuple             # subset of ("i", "ii", "iii")
    degree: int
    diameter: int
    ring: Optional[RingCertificate] = None
    td: Optional[TreeDecomposition] = field(default=None, repr=False)
    td_width: Optional[int] = None
    reason: str = ""


def cor19_check(g: Graph, gens, k: int, td_hint: Optional[TreeDecomposition] = None,
                budget: int = 100_000) -> Cor19Outcome:
    """Establish which of ring-like (2st <= k), tree-width >= k, or small degree and diameter holds."""
    if k < 1:
        raise GraphError("k must be positive")
    gens = require_transitive(g, gens)
    d = g.degree(0)
    diam = diameter(g, transitive=True)
    outcomes = []
    ring = None
    cands = ring_candidates(g, gens, complete=True, max_st=k // 2)
    good = [c for c in cands if 2 * c[1] * c[2] <= k]
    if good:
        cyc, s, t, tight = good[0]
        ring = RingCertificate(cyc, s, t, tight, None)
        outcomes.append("i")
    if d <= k - 1 and diam < diameter_threshold(k):
        outcomes.append("iii")
    td, width, reason = None, None, ""
    tw_known = True
    if td_hint is not None:
        width = verify_td(g, td_hint)
        if width < k:
            td = td_hint
    if td is None:
        try:
            td = greedy_td_search(g, k, budget)
        except BudgetExhausted as e:
            tw_known, reason = False, str(e)
        if td is not None:
            width = verify_td(g, td)
        elif tw_known:
            outcomes.append("ii")
    order = {"i": 0, "ii": 1, "iii": 2}
    outcomes.sort(key=order.get)
    if outcomes:
        status = "ok"
    elif not tw_known:
        status = "inconclusive"
    else:
        status, reason = "VIOLATION", "no ring with 2st <= k, a decomposition of width < k exists, and (iii) fails"
    return Cor19Outcome(status, tuple(outcomes), d, diam, ring, td, width, reason)


# -- product sets ------------------------------------------------------------------------

class IntegerGroup:
    """The additive group of integers."""
    identity = 0
    finite = False

    @staticmethod
    def mul(a, b):
        return a + b

    @staticmethod
    def inv(a):
        return -a


class FreeGroup:
    """Free group on ``rank`` letters; elements are reduced tuples of ``±1..±rank``."""
    identity = ()
    finite = False

    def __init__(self, rank: int = 2):
        self.rank = rank

    def mul(self, a, b):
        a, b = list(a), list(b)
        while a and b and a[-1] == -b[0]:
            a.pop()
            b.pop(0)
        return tuple(a + b)

    @staticmethod
    def inv(a):
        return tuple(-x for x in reversed(a))

    def ball(self, r: int) -> set:
        out, layer = {()}, [()]
        letters = [x for i in range(1, self.rank + 1) for x in (i, -i)]
        for _ in range(r):
            nxt = []
            for w in layer:
                for x in letters:
                    if w and w[-1] == -x:
                        continue
                    nxt.append(w + (x,))
            out.update(nxt)
            layer = nxt
        return out


class TableGroup:
    finite = True

    def __init__(self, tbl: GroupTable):
        self.tbl = tbl
        self.identity = tbl.identity

    def mul(self, a, b):
        return self.tbl.mul(a, b)

    def inv(self, a):
        return self.tbl.inv(a)


@dataclass(frozen=True)
class Thm3Report:
    size_A: int
    size_BA: int
    hypothesis: bool
    margin: float               # |A| + |A|^(1/3)/2 - |BA|
    N_size: Optional[int] = None
    quotient: Optional[str] = None
    N_bound_ok: Optional[bool] = None
    finite_group: bool = False
    status: str = ""


def _check_generating(group, B) -> None:
    if isinstance(group, IntegerGroup):
        gg = 0
        for b in B:
            gg = gcd(gg, b)
        if gg != 1:
            raise GraphError("B does not generate the integers")
    elif isinstance(group, FreeGroup):
        for i in range(1, group.rank + 1):
            if (i,) not in B:
                raise GraphError(f"cannot confirm that B generates: letter {i} missing")
    else:
        closure, frontier = {group.identity}, [group.identity]
        while frontier:
            x = frontier.pop()
            for b in B:
                y = group.mul(b, x)
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        if len(closure) != group.tbl.order:
            raise GraphError("B does not generate the group")


def thm3_check(group, B, A) -> Thm3Report:
    """Compare ``|BA|`` with ``|A| + |A|^(1/3)/2`` and, if smaller, exhibit ``N``.

    ``group`` is an :class:`IntegerGroup`, a :class:`FreeGroup`, or a
    :class:`GroupTable` (finite; reported with ``finite_group`` set since the
    statement targets infinite groups).
    """
    if isinstance(group, GroupTable):
        group = TableGroup(group)
    B, A = set(B), set(A)
    if not A:
        raise GraphError("A must be nonempty")
    if group.identity not in B:
        raise GraphError("B must contain the identity")
    if any(group.inv(b) not in B for b in B):
        raise GraphError("B must be closed under inverses")
    _check_generating(group, B)
    BA = {group.mul(b, a) for b in B for a in A}
    gap = len(BA) - len(A)
    hyp = (2 * gap) ** 3 < len(A)
    margin = len(A) + 0.5 * len(A) ** (1 / 3) - len(BA)
    finite = group.finite
    if not hyp:
        return Thm3Report(len(A), len(BA), False, margin, finite_group=finite, status="hypothesis fails")
    if isinstance(group, IntegerGroup):
        steps = sorted(b for b in B if b > 0)
        p = make_periodic(1, [], [(0, 0, s) for s in steps])
        ring = detect_periodic_ring(p, with_cohesion=False)
        if ring is None:
            return Thm3Report(len(A), len(BA), True, margin, status="VIOLATION")
        # translation by g sends block n to n + period*g, so only 0 fixes every block
        n_size, quotient = 1, "cyclic"
    elif isinstance(group, FreeGroup):
        # a free group of rank >= 2 has no finite normal subgroup with cyclic or dihedral quotient
        return Thm3Report(len(A), len(BA), True, margin, status="VIOLATION")
    else:
        tbl = group.tbl
        C = [b for b in B if b != tbl.identity]
        g = make_cayley(tbl, C)
        ring = detect_ring(g, with_cohesion=False, complete=True)
        if ring is None:
            return Thm3Report(len(A), len(BA), True, margin, finite_group=True, status="no ring found")
        sys = ring.cyclic.system
        N = [x for x in range(tbl.order)
             if all(sys.block_of[tbl.mul(v, x)] == sys.block_of[v] for v in range(tbl.order))]
        n_size = len(N)
        pos = ring.cyclic.position
        m = ring.cyclic.m
        rotations = True
        for x in range(tbl.order):
            act = [pos[sys.block_of[tbl.mul(next(iter(sys.blocks[b])), x)]] for b in ring.cyclic.order]
            if any((act[i + 1] - act[i]) % m != 1 for i in range(m - 1)):
                rotations = False
                break
        quotient = "cyclic" if rotations else "dihedral"
    ok = 64 * n_size ** 3 < len(A)
    return Thm3Report(len(A), len(BA), True, margin, n_size, quotient, ok, finite,
                      "ok" if ok else ("advisory" if finite else "VIOLATION"))
