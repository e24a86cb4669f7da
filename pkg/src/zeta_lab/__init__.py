"""Truncated two-sided expansions of the Riemann zeta function in the critical strip.

Arbitrary-precision evaluation of the two truncated expansions zeta_N' and
zeta_N'', their quotient and difference quotient, the contour integrals they
come from, and the zeros they develop next to zeros of zeta.
"""

from .numeric_core import NumericContext, StripPoint

__version__ = "0.1.0"

__all__ = ["NumericContext", "StripPoint", "__version__"]
