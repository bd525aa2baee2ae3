"""Numerics for the open XYZ spin chain with non-diagonal boundary fields."""

__version__ = "0.1.0"
