"""Scaled summatory multiplicative functions and their renormalization."""

__version__ = "0.1.0"
