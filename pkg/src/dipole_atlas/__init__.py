"""Exact enumeration of (p,q,n)-dipoles on orientable surfaces of low genus."""

__version__ = "0.1.0"
