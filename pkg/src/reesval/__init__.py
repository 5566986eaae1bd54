"""Exact tools for Rees valuations of complete ideals."""

__version__ = "0.1.0"
