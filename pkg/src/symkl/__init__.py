"""Symmetric-power moments of Kloosterman sums, their Euler factors and L-functions."""

__version__ = "0.1.0"
