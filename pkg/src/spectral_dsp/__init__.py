"""Exact Deligne-Simpson verdicts and genus-0 spectral-curve witnesses over Q(i)."""

__version__ = "0.1.0"
