"""Reduced-scale oracle suite behind the ``selftest`` command.

Each check is a module-level function returning ``(passed, detail)`` so
that checks can be farmed out to worker processes; details never contain
timings, keeping the report byte-stable.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from . import parallel
from .core_arith import mod_inverse
from .dedekind import dedekind_fast, dedekind_naive
from .denominators import q_bruteforce, q_formula, q_partial_sum
from .discrepancy import DataTuple, erdos_turan_rhs, star_discrepancy
from .expsums import (
    WeightSeq,
    big_C,
    completed_sum_S0,
    double_sum_S,
    window_sum_beta,
    window_sum_beta_direct,
)
from .generators import gen_set


def _coprime_pairs(nmax):
    for n in range(1, nmax + 1):
        for m in range(1, n + 1):
            if math.gcd(m, n) == 1:
                yield m, n


def check_reciprocity(scale):
    nmax = 60 * scale
    bad = [(m, n) for m, n in _coprime_pairs(nmax) if dedekind_fast(m, n) != dedekind_naive(m, n)]
    return not bad, f"n<={nmax} mismatches={len(bad)}"


def check_hickerson(scale):
    nmax = 60 * scale
    bad = 0
    for m, n in _coprime_pairs(nmax):
        if (12 * dedekind_fast(m, n) - Fraction(m + mod_inverse(m, n), n)).denominator != 1:
            bad += 1
    return bad == 0, f"n<={nmax} failures={bad}"


def check_girstmair(scale):
    nmax = 150 * scale
    bad = [n for n in range(1, nmax + 1) if q_formula(n) != q_bruteforce(n)]
    return not bad, f"n<={nmax} mismatches={len(bad)}"


def check_partial_sum(scale):
    got = q_partial_sum(10)
    return got == 32, f"sum_{{n<=10}} q(n)={got}"


def check_completion(scale):
    rng = random.Random(20240101)
    worst = 0.0
    for _ in range(10 * scale):
        N = rng.randint(1, 24)
        M = rng.randint(1, N)
        D = DataTuple.build(
            12, M, N,
            f"random:0.7:{rng.randrange(2**32)}",
            f"random:0.7:{rng.randrange(2**32)}",
            f"random:{rng.randrange(2**32)}",
        )
        b = rng.randint(1, 50)
        worst = max(worst, abs(completed_sum_S0(D, b) - double_sum_S(D, 0, b).value))
    return worst < 1e-6, f"max_abs_err={worst:.3e}"


def check_window_bound(scale):
    Mmax = 12 * scale
    bad = 0
    for M in range(1, Mmax + 1):
        for c in range(1, (M - 1) // 2 + 1):
            for s in (c, -c):
                for K in range(M, 2 * M):
                    for L in range(1, 2 * M - K + 1):
                        v = window_sum_beta(M, s, K, L)
                        if abs(v) > min(L, M / (2 * c)) + 1e-9:
                            bad += 1
                        if abs(v - window_sum_beta_direct(M, s, K, L)) > 1e-9:
                            bad += 1
    return bad == 0, f"M<={Mmax} failures={bad}"


def _grid_discrepancy(values):
    J = len(values)
    cands = set(values) | {Fraction(i, J) for i in range(J + 1)}
    best = Fraction(0)
    for lam in cands:
        below = sum(1 for v in values if v < lam)
        at = sum(1 for v in values if v <= lam)
        best = max(best, abs(at - lam * J), abs(below - lam * J))
    return best


def check_star_discrepancy(scale):
    rng = random.Random(7)
    bad = 0
    for _ in range(20 * scale):
        J = rng.randint(1, 30)
        q = rng.randint(1, 40)
        vals = [Fraction(rng.randrange(q), q) for _ in range(J)]
        if star_discrepancy(vals) != _grid_discrepancy(vals):
            bad += 1
    return bad == 0, f"failures={bad}"


def check_erdos_turan(scale):
    rng = random.Random(11)
    bad = 0
    for _ in range(20 * scale):
        J = rng.randint(1, 40)
        vals = [Fraction(rng.randrange(1000), 1000) for _ in range(J)]
        d = float(star_discrepancy(vals))
        for H in (1, 2, 5, 10):
            if d > erdos_turan_rhs(vals, H) + 1e-9:
                bad += 1
    return bad == 0, f"violations={bad}"


def check_big_C_examples(scale):
    got = [big_C(M, N, WeightSeq.ones(N), 1).value.real for M, N in ((1, 1), (1, 2), (2, 2))]
    ok = all(abs(g - e) < 1e-12 for g, e in zip(got, (0, 1, 2)))
    return ok, "values=" + ",".join(f"{g:.6f}" for g in got)


def check_generators(scale):
    X = 200 * scale
    primes = gen_set("primes", X)
    oracle = [n for n in range(X + 1, 2 * X + 1) if all(n % d for d in range(2, math.isqrt(n) + 1))]
    return primes == oracle, f"X={X} primes={len(primes)}"


CHECKS = (
    ("reciprocity_vs_definition", check_reciprocity),
    ("hickerson_integrality", check_hickerson),
    ("girstmair_formula", check_girstmair),
    ("q_partial_sum_10", check_partial_sum),
    ("completion_identity", check_completion),
    ("window_sum_bound", check_window_bound),
    ("star_discrepancy_oracle", check_star_discrepancy),
    ("erdos_turan_explicit", check_erdos_turan),
    ("big_C_examples", check_big_C_examples),
    ("prime_generator", check_generators),
)


def _run(args):
    index, scale = args
    name, fn = CHECKS[index]
    passed, detail = fn(scale)
    return name, bool(passed), detail


def run_selftest(scale: int = 1, workers: int = 1) -> list[tuple[str, bool, str]]:
    return parallel.blocked_map(_run, [(i, scale) for i in range(len(CHECKS))], workers)
