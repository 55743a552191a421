"""Relative algebraic geometry over actegories, computed on finite data."""

__version__ = "0.1.0"
