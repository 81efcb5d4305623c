"""Exact computer algebra for Drinfeld's global quantum duality."""

__version__ = "0.1.0"
