"""Plane curves of least degree through point sets of PG(2,q)."""

__version__ = "0.1.0"
