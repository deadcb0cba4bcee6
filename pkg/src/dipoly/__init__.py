"""Exact cycle, path, cover and arc-elimination polynomials of multidigraphs."""
from .digraph import Arc, Digraph, Graph, parse, serialize
from .engine import (
    COVER,
    GEO_COVER,
    PI_HAT,
    POLYNOMIALS,
    SIGMA_HAT,
    SIGMA_PI,
    XI,
    EliminationScheme,
    Engine,
    EngineStats,
    eliminate,
)
from .polynomial import MultiPoly, falling_factorial

__all__ = [
    "Arc",
    "COVER",
    "Digraph",
    "EliminationScheme",
    "Engine",
    "EngineStats",
    "GEO_COVER",
    "Graph",
    "MultiPoly",
    "PI_HAT",
    "POLYNOMIALS",
    "SIGMA_HAT",
    "SIGMA_PI",
    "XI",
    "eliminate",
    "falling_factorial",
    "parse",
    "serialize",
]
__version__ = "0.1.0"
