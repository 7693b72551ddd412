"""Exact homology, Killing modules and Koszul maps of Lie algebras."""

__version__ = "0.1.0"
