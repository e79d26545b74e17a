"""Exact frustration-index tools for subcubic signed graphs."""

__version__ = "0.1.0"
