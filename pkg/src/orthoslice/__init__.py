"""Exact and numerical verification of coordinate-slice decompositions of SO(n)."""

__version__ = "0.1.0"
