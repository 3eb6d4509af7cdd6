"""Parsing and rendering of exact rationals.

Rationals cross the package boundary as strings like ``"3/4"`` or ``"5"`` so
that JSON and CSV artifacts stay lossless; decimal output is a rendering only.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` / ``"p"`` strings (or ints/Fractions) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Lossless string form, ``"p/q"`` or ``"p"`` for integers."""
    return str(Fraction(value))


def decimal_string(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering with the given number of significant digits."""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        rendered = Decimal(value.numerator) / Decimal(value.denominator)
    return str(rendered)
