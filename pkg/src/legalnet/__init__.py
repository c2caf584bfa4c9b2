"""Statute-and-precedent citation networks and legal document similarity."""

__version__ = "0.1.0"
