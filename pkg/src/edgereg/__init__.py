"""Castelnuovo-Mumford regularity of edge ideals via Hochster's formula,
and closed surfaces in the clique complex of the complement graph."""

__version__ = "0.1.0"

from .graph import Graph, GraphFormatError, complement, parse_graph6, encode_graph6
from .homology import F0, F2, FieldSpec, reduced_betti
from .ideal import SimplicialComplex, SquarefreeMonomialIdeal, edge_ideal, stanley_reisner_complex
from .betti import BettiTable, graph_regularity, hochster_table
from .surfaces import PureTwoComplex, SurfaceCertificate, check_closed_surface, find_surface_subcomplex
from .verify import Verdict, verify_main
from .kernels import BACKEND

__all__ = [
    "BACKEND", "BettiTable", "F0", "F2", "FieldSpec", "Graph", "GraphFormatError",
    "PureTwoComplex", "SimplicialComplex", "SquarefreeMonomialIdeal", "SurfaceCertificate",
    "Verdict", "check_closed_surface", "complement", "edge_ideal", "encode_graph6",
    "find_surface_subcomplex", "graph_regularity", "hochster_table", "parse_graph6",
    "reduced_betti", "stanley_reisner_complex", "verify_main",
]
