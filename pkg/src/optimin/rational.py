"""Helpers for exact rational values.

All payoff magnitudes in the library are `fractions.Fraction`, which already
guarantees lowest terms and a positive denominator.  These helpers only cover
coercion and the two text encodings used by the file formats and the CLI:
exact strings like ``"265/6"`` and plain integers.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FormatError


def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction, or exact string ("a/b", "0.4") to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FormatError(f"expected a rational number, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational number: {value!r}") from exc
    raise FormatError(f"expected a rational number, got {type(value).__name__}")


def format_exact(value: Fraction) -> str:
    """Render a Fraction as "a" or "a/b" with no loss."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_table(value: Fraction) -> str:
    """Exact string plus a 3-place decimal hint for non-integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{format_exact(value)} (~{float(value):.3f})"


def json_number(value: Fraction):
    """Encode for JSON: plain int when integral, exact "a/b" string otherwise."""
    if value.denominator == 1:
        return value.numerator
    return format_exact(value)
