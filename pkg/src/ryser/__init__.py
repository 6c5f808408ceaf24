"""Exact tools for r-partite intersecting hypergraphs extremal for
Ryser's conjecture: construction, verification, covers, and search."""

from .core import (PartiteHypergraph, VertexRef, build, parse, render, load,
                   save, HypergraphError, FormatError)

__all__ = ["PartiteHypergraph", "VertexRef", "build", "parse", "render",
           "load", "save", "HypergraphError", "FormatError"]

__version__ = "0.1.0"
