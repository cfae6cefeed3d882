"""Integer and rational primitives.

Rationals are :class:`fractions.Fraction` throughout; it already keeps
values reduced with a positive denominator and represents zero as 0/1.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["gcd", "mod_inverse", "sawtooth", "frac", "floor_frac"]


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers; gcd(0, 0) = 0."""
    return math.gcd(a, b)


def mod_inverse(m: int, n: int) -> int:
    """Return the inverse of ``m`` modulo ``n`` normalized into ``[1, n]``.

    Extended Euclid. For ``n == 1`` every residue is the identity and the
    result is 1. Raises ``ValueError("not invertible")`` if ``gcd(m, n) != 1``.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return 1
    old_r, r = m % n, n
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ValueError(f"not invertible: gcd({m}, {n}) = {old_r}")
    inv = old_s % n
    return inv if inv else n


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def frac(x) -> Fraction:
    """Fractional part ``x - floor(x)`` in ``[0, 1)``, exactly."""
    x = Fraction(x)
    return Fraction(x.numerator % x.denominator, x.denominator)


def sawtooth(x) -> Fraction:
    """((x)) = x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return frac(x) - Fraction(1, 2)
