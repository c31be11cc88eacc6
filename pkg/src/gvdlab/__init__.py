"""Toric ideals of graphs, exact Groebner bases, and geometric vertex
decomposability certificates."""

__version__ = "0.1.0"
