"""Exact representation theory of the unrolled restricted quantum group of sl3 at i."""

__version__ = "0.1.0"
