import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dedekindfrac.core_arith import floor_frac, frac, gcd, mod_inverse, sawtooth

rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**6)


@pytest.mark.parametrize("a,b,expected", [(0, 7, 7), (12, 18, 6), (35, 64, 1), (0, 0, 0)])
def test_gcd(a, b, expected):
    assert gcd(a, b) == expected


@pytest.mark.parametrize("m,n,expected", [(1, 7, 1), (3, 10, 7), (2, 5, 3), (5, 1, 1), (1, 2, 1)])
def test_mod_inverse_examples(m, n, expected):
    assert mod_inverse(m, n) == expected


def test_mod_inverse_normalized_to_one_through_n():
    # the residue class of 0 is never returned; n itself stands in for it only when n = 1
    assert mod_inverse(1, 1) == 1
    assert mod_inverse(13, 1) == 1


def test_mod_inverse_rejects_non_coprime():
    with pytest.raises(ValueError, match="not invertible"):
        mod_inverse(4, 6)


def test_mod_inverse_exhaustive():
    for n in range(1, 2001):
        for m in range(1, n + 1):
            if math.gcd(m, n) == 1:
                inv = mod_inverse(m, n)
                assert 1 <= inv <= n
                assert (m * inv) % n == 1 % n


def test_mod_inverse_sampled_up_to_1e4(rng):
    for _ in range(20000):
        n = rng.randint(1, 10**4)
        m = rng.randint(1, n)
        if math.gcd(m, n) != 1:
            continue
        inv = mod_inverse(m, n)
        assert 1 <= inv <= n and (m * inv) % n == 1 % n
        assert inv % n == pow(m, -1, n) % n if n > 1 else inv == 1


@pytest.mark.parametrize(
    "x,expected",
    [(Fraction(1, 2), Fraction(0)), (Fraction(1, 3), Fraction(-1, 6)), (Fraction(7, 3), Fraction(-1, 6)), (3, 0)],
)
def test_sawtooth_examples(x, expected):
    assert sawtooth(x) == expected


@pytest.mark.parametrize("x,expected", [(Fraction(5, 3), Fraction(2, 3)), (Fraction(-1, 4), Fraction(3, 4)), (2, 0)])
def test_frac_examples(x, expected):
    assert frac(x) == expected


def test_sawtooth_and_frac_random(rng):
    for _ in range(10**4):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        assert frac(x) + floor_frac(x) == x
        assert 0 <= frac(x) < 1
        assert sawtooth(x + 1) == sawtooth(x)
        if x.denominator != 1:
            assert sawtooth(x) + sawtooth(-x) == 0


@given(rationals)
def test_sawtooth_range(x):
    s = sawtooth(x)
    assert Fraction(-1, 2) <= s < Fraction(1, 2)


@given(rationals, st.integers(-50, 50))
def test_frac_periodic(x, k):
    assert frac(x + k) == frac(x)
