"""Exact combinatorics of Newton-Okounkov bodies on smooth toric surfaces."""

__version__ = "0.1.0"
