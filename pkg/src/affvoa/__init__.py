"""Exact computations for universal affine vertex algebras of type A."""

__version__ = "0.1.0"
