"""Exact computations in affine, cyclotomic and KLR-type Hecke algebras."""

__version__ = "0.1.0"
