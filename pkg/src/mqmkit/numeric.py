"""Exact-rational helpers for penalty and score arithmetic.

Ratings compare unrounded scores against thresholds, and a sample whose
penalty total sits exactly on the tolerance must land exactly on the
passing threshold. Binary floating point breaks that at the boundary
(and already turns the textbook 98.44 into 98.44000000000001), so all
penalty math runs on fractions.Fraction; floats appear only at the
serialization edge and inside the logarithmic curve / probability code.
"""

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational

from .errors import FormatError


def as_fraction(value) -> Fraction:
    """Convert a number to an exact Fraction.

    Floats are read through their shortest decimal repr, so a document
    value of 15.6 means 78/5 rather than the binary expansion of the
    float 15.6.
    """
    if isinstance(value, bool):
        raise FormatError("expected a number, got a boolean")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise FormatError(f"non-finite number: {value!r}")
        return Fraction(Decimal(repr(value)))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(Decimal(value))
        except InvalidOperation as exc:
            raise FormatError(f"not a number: {value!r}") from exc
    raise FormatError(f"expected a number, got {type(value).__name__}")


def round_half_away(value: Fraction, decimals: int) -> Fraction:
    """Round to `decimals` places with ties away from zero."""
    scale = Fraction(10) ** decimals
    scaled = value * scale
    whole, rest = divmod(abs(scaled.numerator), scaled.denominator)
    if 2 * rest >= scaled.denominator:
        whole += 1
    return Fraction(-whole if scaled < 0 else whole) / scale


def doc_number(value) -> "int | float":
    """Render a number for a canonical document: int when integral."""
    frac = value if isinstance(value, Fraction) else as_fraction(value)
    if frac.denominator == 1:
        return int(frac)
    return float(frac)


def require_int(value, field: str) -> int:
    """Accept an int (or integral float) from a parsed document."""
    if isinstance(value, bool):
        raise FormatError(f"{field} must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise FormatError(f"{field} must be an integer")
