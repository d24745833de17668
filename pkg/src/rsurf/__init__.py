"""Exact and numerical tools for algebraic curves and moduli computations."""

__version__ = "0.1.0"
