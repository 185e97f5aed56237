"""Exact-category engine for K_1 double exact sequences and the resolution chain."""

__version__ = "0.1.0"
