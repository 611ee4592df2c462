"""Exact computations for finite-dimensional graded quiver algebras: Cartan
determinants, Hochschild and cyclic homology, graded Ext and the Euler
characteristic of relative cyclic homology."""

__version__ = "0.1.0"
