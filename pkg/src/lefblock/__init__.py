"""Exact Lefschetz characters of coset geometries and their p-modular block analysis."""

from .cyclo import E, Cyclotomic, NotRational, as_rational, conjugate, parse_cyclotomic

__version__ = "0.1.0"

__all__ = ["E", "Cyclotomic", "NotRational", "as_rational", "conjugate", "parse_cyclotomic", "__version__"]
