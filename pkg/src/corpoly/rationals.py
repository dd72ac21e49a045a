"""Exact rational helpers shared across the package.

All public data structures carry fractions.Fraction values.  The LP solver
internally switches to gmpy2.mpq when available (same semantics, much faster
arithmetic); everything crossing a module boundary is a Fraction again.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as fast_rational
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    fast_rational = Fraction
    HAVE_GMPY2 = False


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions, mpq values, or 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    # mpq and friends expose numerator/denominator
    return Fraction(int(x.numerator), int(x.denominator))


def rat_str(x) -> str:
    """Render a rational as 'p' or 'p/q' (never a float)."""
    f = to_fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)
