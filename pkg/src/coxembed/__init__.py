"""Exact verification of Cox ring embeddings of del Pezzo surfaces of degree 3 and 2."""

__version__ = "0.1.0"
