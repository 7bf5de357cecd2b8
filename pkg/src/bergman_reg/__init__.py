"""Weighted Bergman projections on the unit disc - moments, kernels and regularity constants."""

__version__ = "0.1.0"
