"""Exact certification of free and nearly free plane curves."""

__version__ = "0.1.0"
