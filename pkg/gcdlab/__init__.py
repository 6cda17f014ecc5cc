"""Exact height inequalities and gcd-analogue experiments over the rationals."""

__version__ = "0.1.0"
