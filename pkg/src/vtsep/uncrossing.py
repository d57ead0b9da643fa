"""Nine-region decomposition of two vertex sets and the uncrossing inequalities."""
from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import GraphError
from .graph import Graph, boundary, vertex_set

REGION_NAMES = ("P", "Q", "S", "T", "U", "W", "X", "Y", "Z")

# region pairs that can never be joined by an edge
_FORBIDDEN = [(a, b) for a in "PQS" for b in "XYZ"] + [(a, b) for a in "PTX" for b in "SWZ"]


@dataclass(frozen=True)
class RegionDecomposition:
    P: frozenset
    Q: frozenset
    S: frozenset
    T: frozenset
    U: frozenset
    W: frozenset
    X: frozenset
    Y: frozenset
    Z: frozenset

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def swapped(self) -> "RegionDecomposition":
        """The decomposition of ``(A2, A1)`` expressed from this one."""
        return RegionDecomposition(P=self.P, Q=self.T, S=self.X, T=self.Q, U=self.U,
                                   W=self.Y, X=self.S, Y=self.W, Z=self.Z)


def regions(g: Graph, A1, A2) -> RegionDecomposition:
    """Split ``V`` by membership in ``A_i``, ``∂A_i`` or neither, for ``i = 1, 2``.

    The forbidden-adjacency pattern (no edges between P,Q,S and X,Y,Z, nor
    between P,T,X and S,W,Z) is asserted as a self-check.
    """
    if g.directed:
        raise GraphError("uncrossing is defined for undirected graphs")
    A1, A2 = vertex_set(g, A1), vertex_set(g, A2)
    B1, B2 = boundary(g, A1), boundary(g, A2)
    V = frozenset(range(g.n))
    out1 = V - A1 - B1
    out2 = V - A2 - B2
    dec = RegionDecomposition(
        P=A1 & A2, Q=B1 & A2, S=A2 & out1,
        T=B2 & A1, U=B1 & B2, W=B2 & out1,
        X=A1 & out2, Y=B1 & out2, Z=out1 & out2,
    )
    label = {}
    for name, part in dec.as_dict().items():
        for v in part:
            label[v] = name
    if len(label) != g.n:  # pragma: no cover - the nine sets partition V by construction
        raise GraphError("regions do not partition the vertex set")
    forbidden = set(_FORBIDDEN) | {(b, a) for a, b in _FORBIDDEN}
    for u, v in g.edges():
        if (label[u], label[v]) in forbidden:  # pragma: no cover - would mean a boundary bug
            raise GraphError(f"structural inconsistency: edge {u}-{v} joins {label[u]} and {label[v]}")
    return dec


@dataclass(frozen=True)
class UncrossingReport:
    k1: int
    k2: int
    lhs: tuple
    rhs: tuple
    holds: tuple
    iii_applicable: bool
    iii_value: int = 0
    iii_k: int = 0

    @property
    def ok(self) -> bool:
        return all(self.holds)


def uncrossing_report(g: Graph, A1, A2) -> UncrossingReport:
    """Evaluate the three uncrossing inequalities for ``A1, A2``.

    (i)   |∂P| + |∂(P∪Q∪S∪T∪X)| <= |∂A1| + |∂A2|
    (ii)  |∂S| + |∂X| <= |∂A1| + |∂A2|
    (iii) if |∂A2| = |∂P| = |∂S| = k then |Q∪U| >= k/2
    """
    A1, A2 = vertex_set(g, A1), vertex_set(g, A2)
    dec = regions(g, A1, A2)
    k1, k2 = len(boundary(g, A1)), len(boundary(g, A2))
    bP = len(boundary(g, dec.P))
    bS = len(boundary(g, dec.S))
    bX = len(boundary(g, dec.X))
    big = dec.P | dec.Q | dec.S | dec.T | dec.X
    bBig = len(boundary(g, big))
    rhs = k1 + k2
    lhs_i, lhs_ii = bP + bBig, bS + bX
    holds_i, holds_ii = lhs_i <= rhs, lhs_ii <= rhs
    applicable = k2 == bP == bS
    qu = len(dec.Q | dec.U)
    if applicable:
        # compare 2|Q∪U| >= k to stay in integers
        holds_iii = 2 * qu >= k2
        return UncrossingReport(k1, k2, (lhs_i, lhs_ii, qu), (rhs, rhs, k2 / 2),
                                (holds_i, holds_ii, holds_iii), True, qu, k2)
    return UncrossingReport(k1, k2, (lhs_i, lhs_ii, None), (rhs, rhs, None),
                            (holds_i, holds_ii, True), False, qu, k2)
