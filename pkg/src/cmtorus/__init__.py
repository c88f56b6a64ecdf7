"""Mumford-Tate groups of products of CM abelian varieties via integer lattices."""

__version__ = "0.1.0"
