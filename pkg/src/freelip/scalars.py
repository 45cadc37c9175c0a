"""Scalar arithmetic modes and parsing helpers.

Two modes run through the whole package.  ``exact`` keeps every quantity a
`fractions.Fraction`; decimal strings are parsed with no binary rounding, so
"1.1" means 11/10 and "7/16" means 7/16.  ``float`` uses 64-bit binary
floats and is always paired with an explicit tolerance wherever a solver
asserts optimality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown arithmetic mode: {mode!r}")
    return mode


def parse_scalar(value, mode: str = EXACT) -> Scalar:
    """Parse an int, Fraction or string ("3", "1.25", "7/16") in the given mode."""
    if mode == EXACT:
        if isinstance(value, float):
            raise TypeError(
                "exact mode accepts ints, Fractions and decimal or p/q strings, "
                "not binary floats"
            )
        return Fraction(value)
    if isinstance(value, str) and "/" in value:
        return float(Fraction(value))
    return float(value)


def format_scalar(x: Scalar) -> str:
    """Render a scalar for reports: "7/16" style in exact mode, repr in float."""
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def zero(mode: str) -> Scalar:
    return Fraction(0) if mode == EXACT else 0.0


def one(mode: str) -> Scalar:
    return Fraction(1) if mode == EXACT else 1.0


def pow2(n: int, mode: str = EXACT) -> Scalar:
    """2**n for integer n of either sign, exact in exact mode."""
    if mode == EXACT:
        return Fraction(2) ** n
    return 2.0 ** n


def as_float(x: Scalar) -> float:
    return float(x)


def dyadic_floor(x: Scalar, mode: str = EXACT) -> int:
    """Largest integer k with 2**k <= x, for x > 0."""
    if x <= 0:
        raise ValueError("dyadic_floor needs a positive scalar")
    if isinstance(x, Fraction):
        k = x.numerator.bit_length() - x.denominator.bit_length()
    else:
        import math

        k = int(math.floor(math.log2(x)))
    while pow2(k, mode) > x:
        k -= 1
    while pow2(k + 1, mode) <= x:
        k += 1
    return k
