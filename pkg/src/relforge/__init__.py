"""Exact reliability polynomials, gadget substitution and certified root forging."""

__version__ = "0.1.0"
