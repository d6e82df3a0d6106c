"""Wolff points of holomorphic self-maps of the bidisc."""

__version__ = "0.1.0"
