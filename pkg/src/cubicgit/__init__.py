"""Exact GIT stability computations for cubic fourfolds."""

from .poly import P, Polynomial, parse
from .weights import MonomialSet, OnePS, limit, mu

__version__ = "0.1.0"

__all__ = ["P", "Polynomial", "parse", "MonomialSet", "OnePS", "limit", "mu", "__version__"]
