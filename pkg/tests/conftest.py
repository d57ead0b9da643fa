"""Shared hypothesis strategies and small brute-force oracles."""
import itertools
import sys

import networkx as nx
from hypothesis import strategies as st

from vtsep.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=12, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = set(chosen)
    if connected:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


@st.composite
def graph_and_sets(draw, count=1, max_n=12, connected=False, nonempty=True):
    g = draw(graphs(min_n=2, max_n=max_n, connected=connected))
    sets = []
    for _ in range(count):
        A = draw(st.frozensets(st.integers(0, g.n - 1), min_size=1 if nonempty else 0))
        sets.append(A)
    return (g, *sets)


def to_nx(g: Graph):
    h = nx.DiGraph() if g.directed else nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_boundary(g: Graph, A):
    A = set(A)
    return {w for v in A for w in g.adj[v] if w not in A}


def brute_edge_cut(g: Graph, A):
    A = set(A)
    return sum(1 for u, v in g.edges() if (u in A) != (v in A))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
