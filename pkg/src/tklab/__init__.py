"""Toeplitz kernels, model spaces and composition operators over rational data."""

__version__ = "0.1.0"
