"""Exact rational scalars.

``Rat`` is :class:`fractions.Fraction`; it already keeps lowest terms with a
positive denominator and raises ``ZeroDivisionError`` on division by zero.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Union

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

RatLike = Union[Fraction, int, str, Decimal]


def parse_rat(value: RatLike) -> Fraction:
    """Parse ``"p/q"``, a decimal literal, an int or a Decimal exactly.

    Binary floats are rejected: they would silently smuggle rounding error
    into exact certificates.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a string instead")
    if isinstance(value, (Rational, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty number")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rat(value: Fraction) -> str:
    """Canonical ``"p/q"`` form (always with a denominator)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def floor_to_grid(value: Fraction, step: Fraction) -> Fraction:
    """Largest multiple of ``step`` that is <= ``value``."""
    return (value // step) * step


def inverse_integer_floor(eps: Fraction) -> Fraction:
    """Largest ``1/m`` (m a positive integer) not exceeding ``eps``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    m = -(-eps.denominator // eps.numerator)  # ceil(1/eps)
    return Fraction(1, m)
