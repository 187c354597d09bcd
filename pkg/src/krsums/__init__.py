"""Exact fermionic sums, Q-systems and their generating functions."""

__version__ = "0.1.0"
