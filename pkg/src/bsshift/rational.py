"""Parsing and canonical formatting of exact rationals."""

from __future__ import annotations

from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are rejected to keep inputs exact."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    value = Fraction(text)
    return value


def fmt(value: Fraction | int) -> str:
    """Canonical ``p/q`` (q > 0, reduced); integers print without a denominator."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
