"""Exact algebra for Z/2-Mackey functors, truncated Witt vectors and the
pi_0 of real topological Hochschild homology."""

__version__ = "0.1.0"
