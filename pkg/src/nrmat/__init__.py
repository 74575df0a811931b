"""Exact toolkit for near-regular matroids: partial-field arithmetic,
P-matrices, basis-family matroids, representability search and blocking
sequences."""

__version__ = "0.1.0"
