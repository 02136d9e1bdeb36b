"""Exact computations with triple covers of the Hirzebruch surface F_3."""

__version__ = "0.1.0"
