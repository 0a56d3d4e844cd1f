"""Exact combinatorics for chromatic obstructions to embedding right-angled
Artin groups in mapping class groups."""

__version__ = "0.1.0"
