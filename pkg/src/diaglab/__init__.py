"""Exact diagonalization over ordinal-indexed lists of periodic decimals,
finite diagonal censuses, and part-whole counting comparisons."""

__version__ = "0.1.0"
