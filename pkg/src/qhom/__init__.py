"""Exact (N,q)-analog simplicial and singular homology."""

__version__ = "0.1.0"
