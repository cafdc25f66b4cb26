"""Directed flag complexes, directed q-analysis and simplicial network measures."""

__version__ = "0.1.0"
