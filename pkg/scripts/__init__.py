"""Pseudo sentence-simplification corpus construction and SARI evaluation"""

__version__ = "0.1.0"
