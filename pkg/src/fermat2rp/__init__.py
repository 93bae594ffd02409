"""Computational toolkit for the modular method applied to Ax^2 + By^r = Cz^p."""

__version__ = "0.1.0"
