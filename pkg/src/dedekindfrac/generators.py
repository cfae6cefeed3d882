"""Sets in (X, 2X] and window sequences (K_n, L_n) for data tuples.

Random choices come from splitmix64 so that any implementation can
reproduce the same sets bit for bit:

    state += 0x9E3779B97F4A7C15            (mod 2^64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2^64)
    z = z ^ (z >> 31)

A uniform double is ``(z >> 11) * 2^-53``; a uniform integer in
``[0, r)`` is ``z % r`` (the bias is below r / 2^64).

Set specs are tagged strings: ``full``, ``primes``, ``smooth:Q``,
``random:DENSITY:SEED``, ``explicit:[a,b,...]``. Window specs:
``full``, ``constant:K:L``, ``random:SEED``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .sieve import largest_prime_factor, prime_mask

__all__ = [
    "SplitMix64",
    "SetSpec",
    "WindowSpec",
    "gen_set",
    "gen_windows",
]

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def randrange(self, r: int) -> int:
        return self.next_u64() % r


@dataclass(frozen=True)
class SetSpec:
    kind: str  # full | primes | smooth | random | explicit
    Q: int = 0
    density: float = 1.0
    seed: int = 0
    values: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "SetSpec":
        text = text.strip()
        head, _, rest = text.partition(":")
        if head in ("full", "full_interval") and not rest:
            return cls("full")
        if head == "primes" and not rest:
            return cls("primes")
        if head == "smooth":
            return cls("smooth", Q=int(rest))
        if head == "random":
            density, seed = rest.split(":")
            density = float(density)
            if not 0.0 <= density <= 1.0:
                raise ValueError(f"density must lie in [0, 1]: {text!r}")
            return cls("random", density=density, seed=int(seed))
        if head == "explicit":
            return cls("explicit", values=tuple(int(v) for v in json.loads(rest)))
        raise ValueError(f"unknown set spec {text!r}")

    def render(self) -> str:
        if self.kind == "smooth":
            return f"smooth:{self.Q}"
        if self.kind == "random":
            return f"random:{self.density!r}:{self.seed}"
        if self.kind == "explicit":
            return "explicit:[" + ",".join(map(str, self.values)) + "]"
        return self.kind


def gen_set(spec: SetSpec | str, X: int) -> list[int]:
    """The subset of (X, 2X] described by ``spec``, sorted ascending."""
    if isinstance(spec, str):
        spec = SetSpec.parse(spec)
    if X < 1:
        raise ValueError("anchor X must be >= 1")
    lo, hi = X + 1, 2 * X
    if spec.kind == "full":
        return list(range(lo, hi + 1))
    if spec.kind == "primes":
        mask = prime_mask(hi)
        return [int(n) for n in np.nonzero(mask[lo:])[0] + lo]
    if spec.kind == "smooth":
        if spec.Q < 2:
            raise ValueError("smooth sets need Q >= 2")
        gpf = largest_prime_factor(hi)
        return [int(n) for n in np.nonzero(gpf[lo:] <= spec.Q)[0] + lo]
    if spec.kind == "random":
        rng = SplitMix64(spec.seed)
        return [n for n in range(lo, hi + 1) if rng.uniform() < spec.density]
    if spec.kind == "explicit":
        bad = [v for v in spec.values if not lo <= v <= hi]
        if bad:
            raise ValueError(f"explicit values {bad} outside ({X}, {2 * X}]")
        return sorted(set(spec.values))
    raise ValueError(f"unknown set kind {spec.kind!r}")


@dataclass(frozen=True)
class WindowSpec:
    kind: str  # full | constant | random
    K: int = 0
    L: int = 0
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "WindowSpec":
        head, _, rest = text.strip().partition(":")
        if head == "full" and not rest:
            return cls("full")
        if head == "constant":
            K, L = rest.split(":")
            return cls("constant", K=int(K), L=int(L))
        if head == "random":
            return cls("random", seed=int(rest))
        raise ValueError(f"unknown window spec {text!r}")

    def render(self) -> str:
        if self.kind == "constant":
            return f"constant:{self.K}:{self.L}"
        if self.kind == "random":
            return f"random:{self.seed}"
        return "full"


def gen_windows(spec: WindowSpec | str, M: int, setN) -> tuple[dict[int, int], dict[int, int]]:
    """Maps ``K, L`` over ``setN`` with ``M <= K_n < K_n + L_n <= 2M``.

    Random windows draw ``K_n`` uniformly from ``[M, 2M - 1]`` and then
    ``L_n`` from ``[1, 2M - K_n]``, visiting ``setN`` in ascending order.
    """
    if isinstance(spec, str):
        spec = WindowSpec.parse(spec)
    if M < 1:
        raise ValueError("M must be >= 1")
    ns = sorted(setN)
    if spec.kind == "full":
        return {n: M for n in ns}, {n: M for n in ns}
    if spec.kind == "constant":
        if not (M <= spec.K and spec.L >= 1 and spec.K + spec.L <= 2 * M):
            raise ValueError(
                f"window ({spec.K}, {spec.K + spec.L}] violates M <= K < K + L <= 2M for M = {M}"
            )
        return {n: spec.K for n in ns}, {n: spec.L for n in ns}
    if spec.kind == "random":
        rng = SplitMix64(spec.seed)
        K, L = {}, {}
        for n in ns:
            k = M + rng.randrange(M)
            K[n] = k
            L[n] = 1 + rng.randrange(2 * M - k)
        return K, L
    raise ValueError(f"unknown window kind {spec.kind!r}")
