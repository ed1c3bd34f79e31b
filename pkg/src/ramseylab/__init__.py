"""Exhaustive-search toolkit for Ramsey-critical colorings of trees versus tK_m."""

__version__ = "0.1.0"
