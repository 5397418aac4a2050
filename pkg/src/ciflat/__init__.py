"""Exact cohomology bookkeeping for complete intersections."""

__version__ = "0.1.0"
