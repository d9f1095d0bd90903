"""Exact solver for the fractional linear matroid parity problem over GF(p)."""

from .field import DEFAULT_PRIME, Prime
from .instance import Graph, HalfVector, LineSet

__all__ = ["DEFAULT_PRIME", "Prime", "Graph", "HalfVector", "LineSet"]
__version__ = "0.1.0"
