"""Exact symbolic engine for finitely presented Hamel spaces."""

__version__ = "0.1.0"
