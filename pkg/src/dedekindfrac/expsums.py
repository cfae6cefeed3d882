"""Exponential sums with Kloosterman fractions.

Covers the bilinear sum

    C(M, N; beta, b) = sum_{m ~ M} |sum_{n ~ N, (n, m) = 1} beta_n e(b m*_n / n)|^2,

the windowed double sum ``sum e_n(a m + b m*_n)`` over the qualifying pairs
of a data tuple, and its Fourier completion over the residues ``c mod M``.
Bound evaluators use implied constant 1 and drop every ``N^{o(1)}``; they
only feed ratio reporting.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core_arith import frac
from .discrepancy import DataTuple, qualifying_pairs
from .generators import SplitMix64
from .parallel import fsum_array

__all__ = [
    "WeightSeq",
    "ExpSumResult",
    "e_frac",
    "e_k",
    "kloosterman_matrix",
    "big_C",
    "double_sum_S",
    "completed_sum_S0",
    "window_sum_beta",
    "window_sum_beta_direct",
    "completion_indicator",
    "bilinear_bound",
    "bilinear_bound_general",
    "double_sum_bound",
]

TWO_PI = 2 * math.pi


def e_frac(t) -> complex:
    """exp(2 pi i t); rationals are reduced mod 1 exactly first."""
    if isinstance(t, (int, Fraction)):
        t = frac(t)
    return cmath.exp(TWO_PI * 1j * float(t))


def e_k(k: int, t: int) -> complex:
    """exp(2 pi i t / k) from the residue of t mod k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return cmath.exp(TWO_PI * 1j * ((t % k) / k))


@dataclass(frozen=True)
class WeightSeq:
    """Weights beta_n on (N, 2N]; missing keys are zero."""

    N: int
    weights: dict = field(hash=False)

    def __post_init__(self):
        for n in self.weights:
            if not self.N < n <= 2 * self.N:
                raise ValueError(f"weight index {n} outside ({self.N}, {2 * self.N}]")

    @classmethod
    def ones(cls, N: int) -> "WeightSeq":
        return cls(N, {n: 1.0 + 0j for n in range(N + 1, 2 * N + 1)})

    @classmethod
    def unit_random(cls, N: int, seed: int) -> "WeightSeq":
        """Unimodular weights with splitmix64 phases."""
        rng = SplitMix64(seed)
        return cls(N, {n: e_frac(rng.uniform()) for n in range(N + 1, 2 * N + 1)})

    @classmethod
    def parse(cls, text: str, N: int) -> "WeightSeq":
        """``ones`` or ``unit:SEED``."""
        head, _, rest = text.strip().partition(":")
        if head == "ones" and not rest:
            return cls.ones(N)
        if head == "unit":
            return cls.unit_random(N, int(rest))
        raise ValueError(f"unknown weight spec {text!r}")

    def as_array(self) -> np.ndarray:
        out = np.zeros(self.N, dtype=complex)
        for n, w in self.weights.items():
            out[n - self.N - 1] = w
        return out

    def norm_sq(self) -> float:
        return math.fsum(abs(w) ** 2 for w in self.weights.values())


@dataclass(frozen=True)
class ExpSumResult:
    value: complex
    terms_counted: int
    bound_rhs: float
    ratio: float


def _ratio(value, rhs: float) -> float:
    return abs(value) / rhs if rhs > 0 else math.nan


def bilinear_bound_general(M: float, N: float, b: float, beta_norm_sq: float) -> float:
    """``|beta|^2 (b/(MN) + 1)^{1/2} (M N^{3/4} + N^{7/4} + M^{6/5} N^{7/10} + M^{3/5} N^{13/10})``."""
    shape = M * N**0.75 + N**1.75 + M**1.2 * N**0.7 + M**0.6 * N**1.3
    return beta_norm_sq * math.sqrt(abs(b) / (M * N) + 1) * shape


def bilinear_bound(M: float, N: float, b: float, beta_norm_sq: float) -> float:
    """Two-term form valid for ``M <= N``: ``(N^{7/4} + M^{3/5} N^{13/10})``."""
    return beta_norm_sq * math.sqrt(abs(b) / (M * N) + 1) * (N**1.75 + M**0.6 * N**1.3)


def double_sum_bound(n_setM: int, n_setN: int, M: int, N: int, a: int, b: int, J: int) -> float:
    main = math.sqrt(n_setM * n_setN) * (abs(b) / (M * N) + 1) ** 0.25 * (N**0.875 + M**0.3 * N**0.65)
    return main + abs(a) * J * M / N


def kloosterman_matrix(ms, ns, b: int) -> np.ndarray:
    """``E[i, j] = e(b m_i* / n_j)`` where ``gcd(m_i, n_j) = 1``, else 0."""
    phase = np.zeros((len(ms), len(ns)))
    mask = np.zeros((len(ms), len(ns)), dtype=bool)
    for j, n in enumerate(ns):
        for i, m in enumerate(ms):
            if math.gcd(m, n) == 1:
                phase[i, j] = (b * pow(m, -1, n)) % n / n
                mask[i, j] = True
    return np.where(mask, np.exp(TWO_PI * 1j * phase), 0)


def big_C(M: int, N: int, beta: WeightSeq, b: int, E: np.ndarray | None = None) -> ExpSumResult:
    """Direct evaluation of C(M, N; beta, b) with the two-term RHS.

    ``E`` may be passed in to reuse ``kloosterman_matrix`` across weights.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    if beta.N != N:
        raise ValueError("weights must be indexed by (N, 2N]")
    ms = range(M + 1, 2 * M + 1)
    ns = range(N + 1, 2 * N + 1)
    if E is None:
        E = kloosterman_matrix(ms, ns, b)
    inner = E @ beta.as_array()
    value = fsum_array(np.abs(inner) ** 2)
    terms = int(sum(1 for m in ms for n in ns if math.gcd(m, n) == 1))
    rhs = bilinear_bound(M, N, b, beta.norm_sq())
    return ExpSumResult(complex(value), terms, rhs, _ratio(value, rhs))


def double_sum_S(D: DataTuple, a: int, b: int) -> ExpSumResult:
    """``sum e_n(a m + b m*)`` over the qualifying pairs, by direct summation."""
    if b == 0:
        raise ValueError("b must be nonzero")
    pairs = list(qualifying_pairs(D))
    if pairs:
        phase = np.array([((a * m + b * pow(m, -1, n)) % n) / n for m, n in pairs])
        value = complex(fsum_array(np.exp(TWO_PI * 1j * phase)))
    else:
        value = 0j
    J = len(pairs)
    rhs = double_sum_bound(len(D.setM), len(D.setN), D.M, D.N, a, b, J)
    return ExpSumResult(value, J, rhs, _ratio(value, rhs))


def window_sum_beta(M: int, c: int, K: int, L: int) -> complex:
    """``sum_{K < k <= K + L} e_M(c k)`` in closed (geometric) form."""
    if not 1 <= L <= M:
        raise ValueError("need 1 <= L <= M")
    c %= M
    if c == 0:
        return complex(L)
    first = e_k(M, c * (K + 1))
    return first * (1 - e_k(M, c * L)) / (1 - e_k(M, c))


def window_sum_beta_direct(M: int, c: int, K: int, L: int) -> complex:
    return complex(sum(e_k(M, c * k) for k in range(K + 1, K + L + 1)))


def completion_indicator(M: int, K: int, L: int, m: int) -> complex:
    """``M^{-1} sum_{c=0}^{M-1} sum_{K<k<=K+L} e_M(c (k - m))``."""
    return sum(e_k(M, -c * m) * window_sum_beta(M, c, K, L) for c in range(M)) / M


def completed_sum_S0(D: DataTuple, b: int) -> complex:
    """The b-part of the double sum rebuilt through the completion over c mod M.

    ``S0 = M^{-1} sum_c sum_{m, n} alpha_m(c) beta_n(c) e_n(b m*)`` with
    ``alpha_m(c) = e_M(-c m)`` and ``beta_n(c)`` the window sum. The full
    residue system ``c = 0..M-1`` makes the window indicator exact.
    """
    if b == 0:
        raise ValueError("b must be nonzero")
    M = D.M
    ms, ns = D.setM, D.setN
    if not ms or not ns:
        return 0j
    E = kloosterman_matrix(ms, ns, b)
    cs = np.arange(M)
    alpha = np.exp(-TWO_PI * 1j * ((np.outer(cs, ms) % M) / M))  # (c, m)
    beta = np.array([[window_sum_beta(M, int(c), D.K[n], D.L[n]) for n in ns] for c in cs])
    per_c = ((alpha @ E) * beta).sum(axis=1)
    return complex(fsum_array(per_c)) / M
