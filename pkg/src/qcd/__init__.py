"""Exact q-Catalan-Daehee numbers and polynomials with a p-adic q-integral oracle."""

__version__ = "0.1.0"
