"""Separation structure of vertex-transitive graphs.

Finite graphs, periodic presentations of two-ended graphs, automorphism
evidence, ring-like certificates, voltage covers, classical boundary bounds,
tree decompositions and end-to-end checkers.
"""
from .errors import BudgetExhausted, CertificateError, GraphError, SymmetryError, VtsepError
from .graph import Graph, boundary, boundary_profile, depth, parse_graph, format_graph

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted", "CertificateError", "Graph", "GraphError", "SymmetryError", "VtsepError",
    "boundary", "boundary_profile", "depth", "format_graph", "parse_graph",
]
