"""Exact enumeration of diagonally convex polyominoes by perimeter."""

__version__ = "0.1.0"
