"""Birational maps from P^3 to threefold scrolls, computed exactly."""

__version__ = "0.1.0"
