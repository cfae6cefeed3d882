"""Least denominators q(n) of the sums S(m, n) = 12 s(m, n) and their mean value.

``q(n)`` is the minimum over ``m`` coprime to ``n`` of the reduced
denominator of ``S(m, n)``. The closed form is

    q(n) = q0(n)                 for odd n,
    q(n) = 2^(v2(n) - 1) q0(n)   for even n,

with ``q0(n)`` the part of ``n`` supported on primes ``p = 3 (mod 4)``.
So ``f(n) = q(n) / n`` is multiplicative: 1/2 on powers of 2, 1 on powers
of primes ``3 mod 4``, ``p^-a`` on ``p^a`` for primes ``1 mod 4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core_arith import gcd
from .dedekind import dedekind_fast
from .sieve import primes_upto

__all__ = [
    "FactorizationView",
    "MeanValueReport",
    "WirsingPrediction",
    "STATED_Q2",
    "EULER_Q2",
    "EULER_GAMMA",
    "vp",
    "factorize",
    "q0",
    "q_formula",
    "q_bruteforce",
    "q_table",
    "q_partial_sum",
    "f_value",
    "euler_factor",
    "constant_C",
    "wirsing_prediction",
    "mean_value_experiment",
]

EULER_GAMMA = 0.57721566490153286060651209

# Weight of the prime 2 built into the closed-form constant C. The local
# series 1 + sum_{a>=1} f(2^a) 2^-a sums to 3/2 (EULER_Q2), so C is half the
# leading constant the partial sums actually approach.
STATED_Q2 = Fraction(3, 4)
EULER_Q2 = Fraction(3, 2)

DEFAULT_PRIME_LIMIT = 10**7


@dataclass(frozen=True)
class FactorizationView:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for p, e in self.factors:
            if e < 1:
                raise ValueError("exponents must be >= 1")
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")


def vp(p: int, n: int) -> int:
    """p-adic valuation of ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def factorize(n: int) -> FactorizationView:
    """Trial-division factorization; fine for the single-value API."""
    if n < 1:
        raise ValueError("n must be positive")
    factors = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return FactorizationView(n, tuple(factors))


def q0(n: int) -> int:
    out = 1
    for p, e in factorize(n).factors:
        if p % 4 == 3:
            out *= p**e
    return out


def q_formula(n: int) -> int:
    if n % 2:
        return q0(n)
    return 2 ** (vp(2, n) - 1) * q0(n)


def q_bruteforce(n: int) -> int:
    """Minimum reduced denominator of 12 s(m, n) over units m in [1, n]."""
    if n < 1:
        raise ValueError("n must be positive")
    best = None
    for m in range(1, n + 1):
        if gcd(m, n) != 1:
            continue
        d = (12 * dedekind_fast(m, n)).denominator
        if best is None or d < best:
            best = d
            if best == 1:
                break
    return best


def q_table(N: int) -> np.ndarray:
    """``q[0..N]`` by sieving (q[0] = 0).

    Start from ``q[n] = n``, strip every prime power ``p^k`` with
    ``p = 1 (mod 4)``, then halve the even entries once.
    """
    q = np.arange(N + 1, dtype=np.int64)
    primes = primes_upto(N)
    for p in primes[primes % 4 == 1]:
        p = int(p)
        pk = p
        while pk <= N:
            q[pk::pk] //= p
            pk *= p
    q[2::2] //= 2
    return q


def q_partial_sum(N: int) -> int:
    """Exact sum of q(n) for 1 <= n <= N."""
    if N < 1:
        raise ValueError("N must be positive")
    # per-entry q(n) <= n, so chunked int64 sums are safe; combine as Python ints
    q = q_table(N)
    step = 1 << 20
    return sum(int(q[i : i + step].sum()) for i in range(0, N + 1, step))


def f_value(n: int) -> Fraction:
    return Fraction(q_formula(n), n)


def euler_factor(p: int) -> Fraction:
    """Local factor sum_{a>=0} f(p^a) / p^a, in closed form."""
    if p == 2:
        return 1 + Fraction(1, 2)  # 1 + sum_{a>=1} (1/2) 2^-a
    if p % 4 == 1:
        return 1 / (1 - Fraction(1, p * p))
    return 1 / (1 - Fraction(1, p))


def _log_euler_products(limit: int) -> tuple[float, float]:
    """(sum over p=1 mod 4, sum over p=3 mod 4) of -log(1 - p^-2), p <= limit."""
    primes = primes_upto(limit).astype(np.float64)
    mod4 = primes_upto(limit) % 4
    s1 = math.fsum(-np.log1p(-(primes[mod4 == 1] ** -2)))
    s3 = math.fsum(-np.log1p(-(primes[mod4 == 3] ** -2)))
    return s1, s3


def constant_C(prime_limit: int = DEFAULT_PRIME_LIMIT) -> tuple[float, float]:
    """The mean-value constant truncated at ``prime_limit``, with a tail bound.

    Returns ``(C, tail)`` where the untruncated constant lies in
    ``[C, C + tail]``. Every omitted factor is at most ``exp(1 / (p^2 - 1))``
    and ``sum_{n > L} 1/(n^2 - 1) <= 1/L``, hence ``tail = C (e^{1/L} - 1)``.
    """
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    s1, s3 = _log_euler_products(prime_limit)
    C = 3 * math.sqrt(2) / (8 * math.pi) * math.exp(s1 + 0.5 * s3)
    tail = C * math.expm1(1 / prime_limit)
    return C, tail


@dataclass(frozen=True)
class WirsingPrediction:
    N: int
    q2: float
    q41: float
    q43: float
    mean_f: float  # predicted sum_{n<=N} q(n)/n
    mean_q: float  # C N^2 / sqrt(log N)


def wirsing_prediction(
    N: int,
    q2: Fraction = STATED_Q2,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
) -> WirsingPrediction:
    """Predicted partial sums of ``f(n) = q(n)/n`` and of ``q(n)``.

    ``mean_f`` is the mean-value form with nu = 1/2 and Gamma(1/2) = sqrt(pi),
    using finite products over p <= N. ``mean_q`` is the partially summed
    asymptotic ``C N^2 / sqrt(log N)``, rescaled by ``q2 / STATED_Q2`` so both
    fields agree on the weight given to the prime 2.
    """
    if N < 16:
        raise ValueError("N >= 16 required (asymptotic regime)")
    primes = primes_upto(N)
    pf = primes.astype(np.float64)
    mod4 = primes % 4
    q41 = math.exp(math.fsum(-np.log1p(-(pf[mod4 == 1] ** -2))))
    q43 = math.exp(math.fsum(-np.log1p(-1.0 / pf[mod4 == 3])))
    logN = math.log(N)
    mean_f = float(q2) * q41 * q43 * N / logN / (math.exp(EULER_GAMMA / 2) * math.sqrt(math.pi))
    C, _ = constant_C(prime_limit)
    mean_q = float(q2 / STATED_Q2) * C * N * N / math.sqrt(logN)
    return WirsingPrediction(N, float(q2), q41, q43, mean_f, mean_q)


@dataclass(frozen=True)
class MeanValueReport:
    N: int
    direct_sum: int
    prediction: float
    ratio: float
    C_value: float
    C_tail_error: float
    ratio_corrected: float  # against the constant with the 2-adic factor 3/2


def mean_value_experiment(
    N_list, prime_limit: int = DEFAULT_PRIME_LIMIT
) -> list[MeanValueReport]:
    C, tail = constant_C(prime_limit)
    reports = []
    for N in N_list:
        if N < 16:
            raise ValueError("each N must be >= 16")
        direct = q_partial_sum(N)
        pred = C * N * N / math.sqrt(math.log(N))
        ratio = direct / pred
        corrected = ratio * float(STATED_Q2 / EULER_Q2)
        reports.append(MeanValueReport(N, direct, pred, ratio, C, tail, corrected))
    return reports
