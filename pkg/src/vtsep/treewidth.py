"""Tree decompositions: validation, balanced separators and a small exact search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExhausted, CertificateError, GraphError
from .graph import Graph, components, is_connected, vertex_set


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple     # frozenset per tree node

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


def make_td(bags, tree_edges) -> TreeDecomposition:
    bags = tuple(frozenset(b) for b in bags)
    return TreeDecomposition(Graph.from_edges(len(bags), tree_edges), bags)


def verify_td(g: Graph, td: TreeDecomposition) -> int:
    """Check the tree-decomposition axioms and return the width."""
    t = td.tree
    if t.n == 0:
        raise GraphError("tree not a tree: no nodes")
    if len(td.bags) != t.n:
        raise GraphError(f"tree has {t.n} nodes but {len(td.bags)} bags were given")
    if t.num_edges() != t.n - 1 or not is_connected(t):
        raise GraphError("tree not a tree: it must be connected with one edge fewer than nodes")
    holders = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise GraphError(f"bag {i} contains unknown vertex {v}")
            holders[v].append(i)
    for v in range(g.n):
        if not holders[v]:
            raise GraphError(f"vertex {v} lies in no bag")
    h = g.underlying() if g.directed else g
    for u, v in h.edges():
        if not any(v in td.bags[i] for i in holders[u]):
            raise GraphError(f"edge {u}–{v} uncovered")
    for v in range(g.n):
        if not is_connected(t, holders[v]):
            raise GraphError(f"subtree of vertex {v} disconnected")
    return td.width


def contract_nested(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges ``st`` with ``Y_t ⊆ Y_s`` until none remain."""
    bags = {i: b for i, b in enumerate(td.bags)}
    nbrs = {i: set(td.tree.adj[i]) for i in range(td.tree.n)}
    changed = True
    while changed:
        changed = False
        for s in sorted(nbrs):
            for t in sorted(nbrs[s]):
                if bags[t] <= bags[s]:
                    for x in nbrs[t]:
                        if x != s:
                            nbrs[x].discard(t)
                            nbrs[x].add(s)
                            nbrs[s].add(x)
                    nbrs[s].discard(t)
                    del nbrs[t], bags[t]
                    changed = True
                    break
            if changed:
                break
    ids = {old: new for new, old in enumerate(sorted(bags))}
    edges = {(min(ids[a], ids[b]), max(ids[a], ids[b])) for a in nbrs for b in nbrs[a]}
    return make_td([bags[o] for o in sorted(bags)], sorted(edges))


def _side(tree: Graph, s: int, t: int) -> set:
    """Nodes reachable from ``s`` without using the edge ``st``."""
    seen, stack = {s}, [s]
    while stack:
        x = stack.pop()
        for y in tree.adj[x]:
            if (x == s and y == t) or y in seen:
                continue
            seen.add(y)
            stack.append(y)
    return seen


def _heavy_components(g: Graph, removed, W, half2) -> list:
    rest = set(range(g.n)) - set(removed)
    return [c for c in components(g, rest) if 2 * len(c & W) > half2]


def check_balanced(g: Graph, S, W) -> bool:
    """Every component of ``g - S`` holds at most half of ``W``."""
    W = frozenset(W)
    return not _heavy_components(g, S, W, len(W))


def balanced_separator(g: Graph, td: TreeDecomposition, W, k: int) -> frozenset:
    """A bag ``S`` with ``|S| <= k`` leaving no component with more than ``|W|/2`` of ``W``.

    Nested bags are contracted first.  Each tree edge ``st`` whose separator
    ``Y_s ∩ Y_t`` leaves a heavy component is oriented towards the side
    containing that component; the walk from node 0 along oriented edges
    ends at a sink, whose bag is returned.
    """
    width = verify_td(g, td)
    if width >= k:
        raise GraphError(f"decomposition width {width} is not below k = {k}")
    W = vertex_set(g, W)
    if not W:
        return frozenset()
    td = contract_nested(td)
    tree, bags = td.tree, td.bags
    out = {}
    for s, t in tree.edges():
        sep = bags[s] & bags[t]
        heavy = _heavy_components(g, sep, W, len(W))
        if not heavy:
            continue
        if len(heavy) > 1:  # pragma: no cover - two strict majorities cannot coexist
            raise CertificateError("two heavy components for one separator")
        C = heavy[0]
        side_s = _side(tree, s, t)
        union_s = frozenset().union(*(bags[p] for p in side_s))
        head, tail = (s, t) if C <= union_s else (t, s)
        if tail in out:
            raise CertificateError(f"tree node {tail} has out-degree above one")
        out[tail] = head
    node, steps = 0, 0
    while node in out:
        node = out[node]
        steps += 1
        if steps > tree.n:  # pragma: no cover - orientation of a tree has no cycles
            raise CertificateError("orientation walk did not terminate")
    S = bags[node]
    if len(S) > k or not check_balanced(g, S, W):
        raise CertificateError("separator failed its own verification")
    return S


# -- decomposition search -------------------------------------------------------------

def _fill_neighbors(adj_mask, eliminated: int, v: int) -> int:
    """Neighbours of ``v`` in the fill graph after eliminating ``eliminated``."""
    seen = 1 << v
    stack = [v]
    result = 0
    while stack:
        x = stack.pop()
        nb = adj_mask[x] & ~seen
        seen |= nb
        result |= nb & ~eliminated
        inner = nb & eliminated
        while inner:
            low = inner & -inner
            stack.append(low.bit_length() - 1)
            inner ^= low
    return result


def _popcount(x: int) -> int:
    return bin(x).count("1")


def td_from_order(g: Graph, order) -> TreeDecomposition:
    adj_mask = _adjacency_masks(g)
    pos = {v: i for i, v in enumerate(order)}
    eliminated = 0
    bags, parent_vertex = [], []
    for v in order:
        nb = _fill_neighbors(adj_mask, eliminated, v)
        members = [u for u in range(g.n) if nb >> u & 1]
        bags.append(frozenset(members) | {v})
        parent_vertex.append(min(members, key=pos.get) if members else None)
        eliminated |= 1 << v
    edges, roots = [], []
    for i, pv in enumerate(parent_vertex):
        if pv is None:
            roots.append(i)
        else:
            edges.append((i, pos[pv]))
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return make_td(bags, edges)


def _adjacency_masks(g: Graph) -> list:
    h = g.underlying() if g.directed else g
    masks = [0] * h.n
    for u in range(h.n):
        for v in h.adj[u]:
            masks[u] |= 1 << v
    return masks


def _greedy_order(g: Graph, adj_mask, score) -> tuple:
    n = g.n
    eliminated, order, width = 0, [], 0
    for _ in range(n):
        best = None
        for v in range(n):
            if eliminated >> v & 1:
                continue
            nb = _fill_neighbors(adj_mask, eliminated, v)
            key = (score(adj_mask, eliminated, nb), v)
            if best is None or key < best[0]:
                best = (key, v, nb)
        _, v, nb = best
        width = max(width, _popcount(nb))
        order.append(v)
        eliminated |= 1 << v
    return order, width


def _degree_score(adj_mask, eliminated, nb):
    return _popcount(nb)


def _fill_score(adj_mask, eliminated, nb):
    verts = [u for u in range(len(adj_mask)) if nb >> u & 1]
    missing = 0
    for i, a in enumerate(verts):
        na = _fill_neighbors(adj_mask, eliminated, a)
        for b in verts[i + 1:]:
            if not na >> b & 1:
                missing += 1
    return missing


def greedy_td_search(g: Graph, k: int, budget: int = 100_000) -> Optional[TreeDecomposition]:
    """A tree decomposition of width below ``k``, or ``None`` if provably none exists.

    Tries min-degree and min-fill orders first, then an exhaustive search
    over elimination orders memoised on the eliminated set (the fill graph
    depends only on that set).  Raises :class:`BudgetExhausted` when the
    search is cut short.
    """
    if k < 1:
        raise GraphError("k must be positive")
    n = g.n
    adj_mask = _adjacency_masks(g)
    for score in (_degree_score, _fill_score):
        order, width = _greedy_order(g, adj_mask, score)
        if width < k:
            return td_from_order(g, order)
    full = (1 << n) - 1
    failed = set()
    states = [0]

    def search(eliminated, order):
        remaining = full & ~eliminated
        if _popcount(remaining) <= k:
            return order + [u for u in range(n) if remaining >> u & 1]
        if eliminated in failed:
            return None
        states[0] += 1
        if states[0] > budget:
            raise BudgetExhausted(f"search budget exhausted after {budget} states")
        candidates = []
        for v in range(n):
            if not remaining >> v & 1:
                continue
            nb = _fill_neighbors(adj_mask, eliminated, v)
            if _popcount(nb) >= k:
                continue
            verts = [u for u in range(n) if nb >> u & 1]
            # eliminating a simplicial vertex never hurts, so it needs no branching
            simplicial = all(nb & ~(1 << a) & ~_fill_neighbors(adj_mask, eliminated, a) == 0
                             for a in verts)
            if simplicial:
                candidates = [v]
                break
            candidates.append(v)
        for v in candidates:
            res = search(eliminated | (1 << v), order + [v])
            if res is not None:
                return res
        failed.add(eliminated)
        return None

    order = search(0, [])
    if order is None:
        return None
    return td_from_order(g, order)


def parse_td(text: str, g: Optional[Graph] = None) -> TreeDecomposition:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "td" or len(lines[0]) != 3:
        raise GraphError("expected header 'td <b> <n>'")
    b, n = int(lines[0][1]), int(lines[0][2])
    if g is not None and g.n != n:
        raise GraphError(f"decomposition is for {n} vertices, graph has {g.n}")
    bags = [None] * b
    edges = []
    for ln in lines[1:]:
        if ln[0] == "bag":
            i = int(ln[1])
            if not 0 <= i < b or bags[i] is not None:
                raise GraphError(f"bad or repeated bag index {i}")
            bags[i] = frozenset(int(x) for x in ln[2:])
        elif ln[0] == "tedge" and len(ln) == 3:
            edges.append((int(ln[1]), int(ln[2])))
        else:
            raise GraphError(f"malformed line {' '.join(ln)!r}")
    if any(x is None for x in bags):
        raise GraphError("missing bag lines")
    if len(edges) != b - 1:
        raise GraphError(f"expected {b - 1} tedge lines, found {len(edges)}")
    return make_td(bags, edges)


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"td {len(td.bags)} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["bag", str(i)] + [str(v) for v in sorted(bag)]))
    for a, b in td.tree.edges():
        lines.append(f"tedge {a} {b}")
    return "\n".join(lines) + "\n"
