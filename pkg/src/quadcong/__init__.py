"""Exact computations with quadratic orders and class-number congruences."""

__version__ = "0.1.0"
