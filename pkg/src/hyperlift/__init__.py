"""Theta blocks, Borcherds products and reflective lattices for hyperbolizations of affine Lie algebras."""

__version__ = "0.1.0"
