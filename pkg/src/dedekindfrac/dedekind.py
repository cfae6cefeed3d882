"""Dedekind sums by the defining sum and by reciprocity.

The definition uses the standard sawtooth, so for coprime ``m, n``

    s(m, n) = sum_{k=1}^{n-1} ((k m / n)) ((k / n)).

The fast path runs the reciprocity law

    s(m, n) + s(n, m) = (m/n + n/m + 1/(m n)) / 12 - 1/4

down the Euclidean remainder sequence, finishing with the closed form
``s(1, n) = (n - 1)(n - 2) / (12 n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .core_arith import frac, gcd, mod_inverse

__all__ = [
    "DedekindValue",
    "dedekind_naive",
    "dedekind_fast",
    "dedekind_value",
    "hickerson_frac",
    "frac_rho_s",
    "RHO_DPS",
]

# decimal digits carried when rho is irrational
RHO_DPS = 40


def _check(m: int, n: int) -> None:
    if n < 1 or m < 1:
        raise ValueError(f"m and n must be positive, got ({m}, {n})")
    if gcd(m, n) != 1:
        raise ValueError(f"s(m, n) requires coprimality: gcd({m}, {n}) != 1")


def dedekind_naive(m: int, n: int) -> Fraction:
    """s(m, n) by the defining O(n) sum.

    Each sawtooth is ``(2r - n) / (2n)`` for a nonzero residue ``r``, so
    the whole sum is one integer over ``4 n^2``.
    """
    _check(m, n)
    m %= n
    total = 0
    for k in range(1, n):
        r = k * m % n
        if r:
            total += (2 * r - n) * (2 * k - n)
    return Fraction(total, 4 * n * n)


def dedekind_fast(m: int, n: int) -> Fraction:
    """s(m, n) in O(log n) steps via reciprocity.

    Every reciprocity term has denominator ``12 r_i r_{i+1}`` for
    consecutive Euclidean remainders, so the sum is accumulated as one
    integer over ``12 * prod(r)`` and reduced once.
    """
    _check(m, n)
    m %= n
    if m == 0:  # only reachable for n == 1
        return Fraction(0)
    rem = [n, m]
    while rem[-1] != 1:
        rem.append(rem[-2] % rem[-1])
    D = 1
    for r in rem:
        D *= r
    total = 0
    sign = 1
    for b, a in zip(rem, rem[1:-1]):
        total += sign * ((a * a + b * b + 1) * (D // (a * b)) - 3 * D)
        sign = -sign
    b = rem[-2]
    total += sign * (b - 1) * (b - 2) * (D // b)
    return Fraction(total, 12 * D)


@dataclass(frozen=True)
class DedekindValue:
    m: int
    n: int
    s: Fraction

    @property
    def S(self) -> Fraction:
        return 12 * self.s

    @property
    def denominator(self) -> int:
        """Reduced denominator of S(m, n) = 12 s(m, n)."""
        return self.S.denominator


def dedekind_value(m: int, n: int, naive: bool = False) -> DedekindValue:
    s = dedekind_naive(m, n) if naive else dedekind_fast(m, n)
    return DedekindValue(m, n, s)


def hickerson_frac(m: int, n: int) -> Fraction:
    """Fractional part of ``(m + m*) / n``, which equals ``{12 s(m, n)}``."""
    _check(m, n)
    return frac(Fraction(m + mod_inverse(m, n), n))


def frac_rho_s(rho, m: int, n: int):
    """Fractional part of ``rho * s(m, n)``.

    Rational ``rho`` (int, Fraction, or a float taken at its exact binary
    value) gives an exact :class:`Fraction`. Anything else is treated as a
    real number and evaluated with mpmath at ``RHO_DPS`` digits, returning
    an ``mpf``. ``s(m, n)`` itself is always exact, and ``s = 0`` maps to 0
    exactly.
    """
    if rho == 0:
        raise ValueError("rho must be nonzero")
    s = dedekind_fast(m, n)
    if isinstance(rho, (int, float, Rational)):
        return frac(Fraction(rho) * s)
    if s == 0:
        return mpmath.mpf(0)
    with mpmath.workdps(RHO_DPS):
        x = mpmath.mpf(rho) * s.numerator / s.denominator
        return x - mpmath.floor(x)
