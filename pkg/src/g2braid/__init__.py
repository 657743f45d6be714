"""Exact and numerical tools for G2 fusion rules, path bases and braid representations."""

from __future__ import annotations

__version__ = "0.1.0"
