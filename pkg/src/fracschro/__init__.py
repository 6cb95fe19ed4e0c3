"""Numerical tools for observability of fractional Schrödinger equations."""

__version__ = "0.1.0"
