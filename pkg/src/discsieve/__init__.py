"""Discriminant sieves for monic integer polynomials."""

__version__ = "0.1.0"

from .polyarith import MonicPoly, delta_prime, diff_poly, discriminant  # noqa: E402

__all__ = ["MonicPoly", "discriminant", "delta_prime", "diff_poly", "__version__"]
