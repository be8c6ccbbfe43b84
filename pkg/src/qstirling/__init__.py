"""Quasi-Stirling permutations of multisets, their labeled-tree models, and
exact verification of the descent-polynomial identities."""

__version__ = "0.1.0"
