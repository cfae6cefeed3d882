"""Fractional parts of rho * s(m, n) over data tuples, and their discrepancy.

A data tuple fixes ``rho``, sizes ``M <= N``, sets ``setM`` in (M, 2M] and
``setN`` in (N, 2N], and a window ``(K_n, K_n + L_n]`` inside (M, 2M] for
each ``n``. The qualifying pairs are ``(m, n)`` with ``m`` in its window and
``gcd(m, n) = 1``. Counting is over closed intervals ``[0, lam]``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import parallel
from .core_arith import gcd
from .dedekind import frac_rho_s, hickerson_frac
from .generators import SetSpec, WindowSpec, gen_set, gen_windows

__all__ = [
    "DataTuple",
    "FracPoints",
    "DiscrepancyReport",
    "qualifying_pairs",
    "count_N_D",
    "count_A_D",
    "frac_points",
    "star_discrepancy",
    "delta_D",
    "erdos_turan_rhs",
    "erdos_turan_profile",
    "ET_CONSTANTS",
    "discrepancy_bound",
    "discrepancy_bound_by_card",
    "discrepancy_bound_by_size",
    "et_h_choice",
    "discrepancy_experiment",
]

# explicit Erdos-Turan form: J/(H+1) + 3 * sum_{h<=H} |sum_j e(h g_j)| / h
ET_CONSTANTS = (1, 3)


@dataclass(frozen=True)
class DataTuple:
    rho: object
    M: int
    N: int
    K: dict = field(hash=False)
    L: dict = field(hash=False)
    setM: tuple
    setN: tuple

    def __post_init__(self):
        if self.rho == 0:
            raise ValueError("rho must be nonzero")
        if not 1 <= self.M <= self.N:
            raise ValueError(f"need 1 <= M <= N, got M={self.M}, N={self.N}")
        object.__setattr__(self, "setM", tuple(sorted(set(self.setM))))
        object.__setattr__(self, "setN", tuple(sorted(set(self.setN))))
        M, N = self.M, self.N
        if self.setM and not (M < self.setM[0] and self.setM[-1] <= 2 * M):
            raise ValueError(f"setM must lie in ({M}, {2 * M}]")
        if self.setN and not (N < self.setN[0] and self.setN[-1] <= 2 * N):
            raise ValueError(f"setN must lie in ({N}, {2 * N}]")
        for n in self.setN:
            if n not in self.K or n not in self.L:
                raise ValueError(f"window missing for n={n}")
            k, l = self.K[n], self.L[n]
            if not (M <= k < k + l <= 2 * M):
                raise ValueError(f"window for n={n} violates M <= K < K + L <= 2M: K={k}, L={l}")

    @classmethod
    def build(cls, rho, M, N, setM="full", setN="full", windows="full") -> "DataTuple":
        sm = gen_set(setM, M)
        sn = gen_set(setN, N)
        K, L = gen_windows(windows, M, sn)
        return cls(rho, M, N, K, L, tuple(sm), tuple(sn))

    @property
    def card_MxN(self) -> int:
        return len(self.setM) * len(self.setN)


def _window(D: DataTuple, n: int):
    lo = bisect.bisect_right(D.setM, D.K[n])
    hi = bisect.bisect_right(D.setM, D.K[n] + D.L[n])
    return D.setM[lo:hi]


def qualifying_pairs(D: DataTuple):
    """Yield ``(m, n)`` in (n, m) lexicographic order."""
    for n in D.setN:
        for m in _window(D, n):
            if gcd(m, n) == 1:
                yield m, n


def count_N_D(D: DataTuple) -> int:
    return sum(1 for _ in qualifying_pairs(D))


@dataclass(frozen=True)
class FracPoints:
    values: tuple

    def __post_init__(self):
        for v in self.values:
            if not 0 <= v < 1:
                raise ValueError(f"value {v} outside [0, 1)")

    @property
    def J(self) -> int:
        return len(self.values)


def _mpf_to_fraction(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(man) * Fraction(2) ** exp


def _points_for_block(args):
    rho, pairs = args
    if rho == 12:
        return [hickerson_frac(m, n) for m, n in pairs]
    out = []
    for m, n in pairs:
        v = frac_rho_s(rho, m, n)
        out.append(v if isinstance(v, Fraction) else _mpf_to_fraction(v))
    return out


def frac_points(
    D: DataTuple, workers: int = 1, block_size: int = parallel.DEFAULT_BLOCK_SIZE
) -> FracPoints:
    """Fractional parts ``{rho s(m, n)}`` over the qualifying pairs.

    ``rho = 12`` uses ``{(m + m*) / n}`` exactly. Other rational ``rho`` are
    exact as well; irrational ``rho`` is evaluated at 40 digits and the
    result stored as the exact binary value of that approximation. Blocks of
    ``block_size`` moduli are processed in order regardless of ``workers``.
    """
    tasks = []
    for ns in parallel.blocks(D.setN, block_size):
        pairs = [(m, n) for n in ns for m in _window(D, n) if gcd(m, n) == 1]
        tasks.append((D.rho, pairs))
    out = []
    for chunk in parallel.blocked_map(_points_for_block, tasks, workers):
        out.extend(chunk)
    return FracPoints(tuple(out))


def count_A_D(points, lam) -> int:
    """Number of points in the closed interval ``[0, lam]``."""
    values = points.values if isinstance(points, FracPoints) else points
    return sum(1 for v in values if v <= lam)


def star_discrepancy(points) -> Fraction:
    """``sup_{lam in [0,1]} |#(G & [0, lam]) - lam J|`` exactly.

    Between consecutive distinct values the count is constant, so the
    supremum is attained at a sample value or approached from its left.
    Values are sorted on ``(float(x), x)``; rounding to float is monotone,
    so the order is exact while most comparisons stay cheap.
    """
    values = points.values if isinstance(points, FracPoints) else points
    values = sorted((Fraction(v) for v in values), key=lambda x: (float(x), x))
    J = len(values)
    if J == 0:
        return Fraction(0)
    best = Fraction(0)
    count = 0
    i = 0
    while i < J:
        v = values[i]
        left = abs(count - J * v)  # limit from the left of v
        while i < J and values[i] == v:
            i += 1
        count = i
        at = abs(count - J * v)
        if left > best:
            best = left
        if at > best:
            best = at
    # on [v_last, 1] the count is J, so |J - lam J| peaks at v_last (done)
    return best


def delta_D(D: DataTuple, workers: int = 1, block_size: int = parallel.DEFAULT_BLOCK_SIZE) -> Fraction:
    return star_discrepancy(frac_points(D, workers, block_size))


def _exp_sums(values, H: int) -> list[complex]:
    """``sum_j e(h g_j)`` for h = 1..H, reducing exactly when denominators are small."""
    fr = [Fraction(v) for v in values]
    small = all(v.denominator < 2**31 for v in fr)
    if small:
        num = np.array([v.numerator for v in fr], dtype=np.int64)
        den = np.array([v.denominator for v in fr], dtype=np.int64)
    else:
        g = np.array([float(v) for v in fr])
    out = []
    for h in range(1, H + 1):
        if small:
            phase = ((h * num) % den) / den
        else:
            phase = np.mod(h * g, 1.0)
        z = np.exp(2j * np.pi * phase)
        out.append(parallel.fsum_array(z))
    return out


def erdos_turan_profile(points, H: int) -> list[float]:
    """Erdos-Turan right-hand sides for every ``1 <= h' <= H`` in one pass."""
    if H < 1:
        raise ValueError("H must be >= 1")
    values = points.values if isinstance(points, FracPoints) else tuple(points)
    J = len(values)
    if J == 0:
        return [0.0] * H
    c0, c1 = ET_CONSTANTS
    sums = _exp_sums(values, H)
    out = []
    terms = []
    for h, s in enumerate(sums, 1):
        terms.append(abs(s) / h)
        out.append(c0 * J / (h + 1) + c1 * math.fsum(terms))
    return out


def erdos_turan_rhs(points, H: int) -> float:
    """``J/(H+1) + 3 sum_{h=1}^H |sum_j e(h g_j)| / h``."""
    return erdos_turan_profile(points, H)[-1]


def discrepancy_bound(M: int, N: int, card_MxN: int, N_D: int) -> float:
    """``sqrt(|M x N|) M^{3/10} N^{13/20} + N_D sqrt(M / N)``, constant 1, no N^{o(1)}."""
    return math.sqrt(card_MxN) * M**0.3 * N**0.65 + N_D * math.sqrt(M / N)


def discrepancy_bound_by_card(M: int, N: int, card_MxN: int) -> float:
    return math.sqrt(card_MxN) * M**0.3 * N**0.65 + card_MxN * math.sqrt(M / N)


def discrepancy_bound_by_size(M: int, N: int) -> float:
    return M**0.8 * N**1.15 + M**1.5 * N**0.5


def et_h_choice(M: int, N: int) -> int:
    """floor(sqrt(N / M)), at least 1."""
    if M < 1 or N < M:
        raise ValueError("need 1 <= M <= N")
    return max(1, math.isqrt(N // M))


@dataclass(frozen=True)
class DiscrepancyReport:
    rho: str
    M: int
    N: int
    set_spec: str
    N_D: int
    delta: float
    delta_over_ND: float
    bound: float
    ratio: float
    H: int
    et_rhs: float
    heuristic: bool  # the bound shape is only established for rho = 12


def discrepancy_experiment(
    D: DataTuple,
    set_spec: str = "",
    workers: int = 1,
    block_size: int = parallel.DEFAULT_BLOCK_SIZE,
) -> DiscrepancyReport:
    G = frac_points(D, workers, block_size)
    J = G.J
    delta = star_discrepancy(G)
    bound = discrepancy_bound(D.M, D.N, D.card_MxN, J) if D.card_MxN else 0.0
    H = et_h_choice(D.M, D.N)
    return DiscrepancyReport(
        rho=str(D.rho),
        M=D.M,
        N=D.N,
        set_spec=set_spec,
        N_D=J,
        delta=float(delta),
        delta_over_ND=float(delta / J) if J else 0.0,
        bound=bound,
        ratio=float(delta) / bound if bound else 0.0,
        H=H,
        et_rhs=erdos_turan_rhs(G, H),
        heuristic=D.rho != 12,
    )
