"""Numerical verification of Myers-type compactness criteria."""

__version__ = "0.1.0"
