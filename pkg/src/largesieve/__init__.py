"""Numerical verification toolkit for large sieve inequalities.

Dirichlet character arithmetic, Gauss/Ramanujan sums, the associated
multiplicative-function machinery, and evaluators that check each sieve
inequality and asymptotic statement at desk scale.
"""

from largesieve._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
