"""Chromatic index and explicit optimal edge colorings of dense quasirandom
graphs of odd order."""

from .multigraph import Bipartition, MultiGraph, parse_edge_list, format_edge_list
from .coloring import EdgeColoring, KempeChain, Multifan, kempe_chain_at, kempe_swap
from .coloring import build_multifan, star_multigraph_coloring, verify_proper

__all__ = [
    "Bipartition",
    "MultiGraph",
    "EdgeColoring",
    "KempeChain",
    "Multifan",
    "parse_edge_list",
    "format_edge_list",
    "kempe_chain_at",
    "kempe_swap",
    "build_multifan",
    "star_multigraph_coloring",
    "verify_proper",
]

__version__ = "0.1.0"
