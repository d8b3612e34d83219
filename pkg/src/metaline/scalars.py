"""Exact rational scalars.

Every computation in this package runs over the rationals with zero
tolerance.  This module pins the scalar constructor used everywhere:
gmpy2's mpq when available (much faster), with fractions.Fraction as a
drop-in fallback.  Both keep a canonical reduced form with positive
denominator and expose .numerator / .denominator.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)


def qstr(x) -> str:
    """Canonical string form: "a" for integers, else "a/b" with b > 0."""
    n, d = x.numerator, x.denominator
    return str(n) if d == 1 else f"{n}/{d}"


def parse_rational(text: str):
    """Parse "a" or "a/b" into an exact rational."""
    t = text.strip()
    try:
        if "/" in t:
            num, den = t.split("/", 1)
            return Q(int(num.strip()), int(den.strip()))
        return Q(int(t))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational literal: {text!r}")
