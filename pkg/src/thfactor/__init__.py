"""Fredholm theory, asymmetric factorization and finite-section checks for
Toeplitz + Hankel operators M(phi) = T(phi) + H(phi) on H^p."""

__version__ = "0.1.0"
