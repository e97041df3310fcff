"""Exact rational arithmetic backend.

All numeric values in this package are arbitrary-precision rationals kept in
lowest terms with a positive denominator.  gmpy2's mpq type is used when
available (it is much faster); the stdlib Fraction is a drop-in fallback.
Both types hash and compare identically, so mixed use is safe.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _make

    _RatType = type(_make(1))
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _make = Fraction
    _RatType = Fraction

Rat = _RatType

ZERO = _make(0)
ONE = _make(1)


def rat(numerator: int | str | Rat, denominator: int = 1) -> Rat:
    """Build a rational, reduced and with positive denominator."""
    return _make(numerator, denominator)


def parse_rational(token: str) -> Rat:
    """Parse an integer or p/q token; raises ValueError on anything else."""
    text = token.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {token!r}")
        return _make(int(num), d)
    return _make(int(text), 1)


def format_rational(value: Rat) -> str:
    """Canonical text form: 'p' when integral, else 'p/q'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
