"""Exact counts of matrices over finite fields with forbidden support positions."""

__version__ = "0.1.0"
