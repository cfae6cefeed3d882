import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dedekindfrac.dedekind import dedekind_naive
from dedekindfrac.discrepancy import (
    DataTuple,
    FracPoints,
    discrepancy_bound_by_card,
    discrepancy_bound_by_size,
    count_A_D,
    count_N_D,
    delta_D,
    discrepancy_experiment,
    erdos_turan_profile,
    erdos_turan_rhs,
    et_h_choice,
    frac_points,
    qualifying_pairs,
    star_discrepancy,
    discrepancy_bound,
)


def grid_discrepancy(values):
    """Brute force: counts at each sample point and just left of it, plus i/J."""
    values = [Fraction(v) for v in values]
    J = len(values)
    if J == 0:
        return Fraction(0)
    cands = set(values) | {Fraction(i, J) for i in range(J + 1)} | {Fraction(1)}
    best = Fraction(0)
    for lam in cands:
        at = sum(1 for v in values if v <= lam)
        below = sum(1 for v in values if v < lam)
        best = max(best, abs(at - lam * J), abs(below - lam * J))
    return best


def small_tuple():
    return DataTuple.build(12, 2, 2, "full", "full", "constant:2:2")


def test_datatuple_rejects_bad_windows():
    with pytest.raises(ValueError):
        DataTuple(12, 2, 2, {3: 3}, {3: 2}, (3, 4), (3,))
    with pytest.raises(ValueError):
        DataTuple(12, 3, 2, {}, {}, (), ())
    with pytest.raises(ValueError):
        DataTuple(12, 2, 2, {}, {}, (2,), ())
    with pytest.raises(ValueError):
        DataTuple(0, 2, 2, {}, {}, (), ())


def test_qualifying_pairs_example():
    D = small_tuple()
    assert list(qualifying_pairs(D)) == [(4, 3), (3, 4)]
    assert count_N_D(D) == 2


def test_empty_sets():
    D = DataTuple(12, 2, 2, {}, {}, (3, 4), ())
    assert list(qualifying_pairs(D)) == [] and frac_points(D).J == 0 and delta_D(D) == 0
    D = DataTuple(12, 2, 2, {3: 2, 4: 2}, {3: 2, 4: 2}, (), (3, 4))
    assert count_N_D(D) == 0


def test_window_with_no_members():
    D = DataTuple(12, 4, 4, {5: 4}, {5: 2}, (7, 8), (5,))
    assert count_N_D(D) == 0


def test_count_full_ranges_brute_force():
    D = DataTuple.build(12, 8, 8)
    expected = sum(1 for n in range(9, 17) for m in range(9, 17) if math.gcd(m, n) == 1)
    assert count_N_D(D) == expected


def test_frac_points_examples():
    assert sorted(frac_points(small_tuple()).values) == [Fraction(1, 2), Fraction(2, 3)]
    D = DataTuple(12, 1, 2, {3: 1}, {3: 1}, (2,), (3,))
    assert frac_points(D).values == (Fraction(1, 3),)


def test_frac_points_general_rho_matches_exact():
    D = DataTuple.build(Fraction(7, 3), 6, 9, "full", "full", "random:5")
    expected = []
    for m, n in qualifying_pairs(D):
        x = Fraction(7, 3) * dedekind_naive(m, n)
        expected.append(x - math.floor(x))
    assert list(frac_points(D).values) == expected


@pytest.mark.parametrize(
    "values,expected",
    [([], 0), ([Fraction(1, 2)], Fraction(1, 2)), ([0, Fraction(1, 2)], 1)],
)
def test_star_discrepancy_examples(values, expected):
    assert star_discrepancy(values) == expected


def test_delta_D_example():
    assert delta_D(small_tuple()) == 1


def test_identical_points():
    for J in range(1, 20):
        assert star_discrepancy([0] * J) == J
        x = Fraction(3, 7)
        assert star_discrepancy([x] * J) == grid_discrepancy([x] * J) == J * max(x, 1 - x)


def test_uniform_grid_discrepancy_is_one():
    for J in range(1, 101):
        assert star_discrepancy([Fraction(i, J) for i in range(J)]) == 1


def test_star_discrepancy_matches_grid_on_rationals(rng):
    for _ in range(200):
        J = rng.randint(1, 50)
        q = rng.randint(1, 60)
        vals = [Fraction(rng.randrange(q), q) for _ in range(J)]
        assert star_discrepancy(vals) == grid_discrepancy(vals)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=Fraction(99, 100), max_denominator=200), max_size=40))
def test_star_discrepancy_property(values):
    assert star_discrepancy(values) == grid_discrepancy(values)


def test_delta_D_permutation_invariant():
    D = DataTuple.build(12, 16, 30, "random:0.6:1", "random:0.6:2", "random:3")
    pts = list(frac_points(D).values)
    random.Random(5).shuffle(pts)
    assert star_discrepancy(pts) == delta_D(D)


def test_A_of_one_equals_N_D(rng):
    for i in range(100):
        N = rng.randint(1, 30)
        M = rng.randint(1, N)
        rho = rng.choice([12, Fraction(1, 3), 5, Fraction(-7, 2)])
        D = DataTuple.build(rho, M, N, f"random:0.7:{i}", f"random:0.7:{i + 1000}", f"random:{i}")
        assert count_A_D(frac_points(D), 1) == count_N_D(D)


def test_frac_points_worker_invariance():
    D = DataTuple.build(12, 32, 64)
    one = frac_points(D, workers=1, block_size=8)
    two = frac_points(D, workers=2, block_size=8)
    assert one == two == frac_points(D, block_size=1000)


def test_erdos_turan_examples():
    assert erdos_turan_rhs([], 3) == 0
    assert erdos_turan_rhs([0] * 4, 2) == pytest.approx(4 / 3 + 3 * (4 + 2))
    assert erdos_turan_rhs([0], 1) == pytest.approx(3.5)
    assert star_discrepancy([0]) <= 3.5


def test_erdos_turan_profile_consistent():
    vals = [Fraction(i * i % 17, 17) for i in range(30)]
    prof = erdos_turan_profile(vals, 10)
    for H in range(1, 11):
        assert prof[H - 1] == pytest.approx(erdos_turan_rhs(vals, H), rel=1e-14)


def test_erdos_turan_large_denominators_use_float_path():
    from dedekindfrac.discrepancy import _exp_sums

    vals = [Fraction(1, 3) + Fraction(1, 2**70)]
    (s,) = _exp_sums(vals, 1)
    assert abs(s - complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))) < 1e-12


def test_bounds():
    assert discrepancy_bound(1, 1, 1, 1) == 2
    N = 10**4
    assert discrepancy_bound(N, N, 9, 0) == pytest.approx(3 * N**0.95)
    M = N**0.75
    a, b = M**0.8 * N**1.15, M**1.5 * N**0.5
    assert a == pytest.approx(N**1.75) and b == pytest.approx(N ** (9 / 8 + 0.5))
    assert discrepancy_bound_by_size(M, N) == pytest.approx(a + b)
    assert discrepancy_bound_by_card(4, 16, 64) == pytest.approx(discrepancy_bound(4, 16, 64, 64))


@pytest.mark.parametrize("M,N,H", [(4, 64, 4), (7, 7, 1), (1, 10, 3), (3, 100, 5)])
def test_et_h_choice(M, N, H):
    assert et_h_choice(M, N) == H == max(1, math.floor(math.sqrt(N / M)))


def test_experiment_report():
    r = discrepancy_experiment(DataTuple.build(12, 16, 16), "full")
    assert r.N_D == count_N_D(DataTuple.build(12, 16, 16))
    assert r.delta <= r.et_rhs
    assert not r.heuristic
    r2 = discrepancy_experiment(DataTuple.build(Fraction(1, 2), 4, 4))
    assert r2.heuristic


def test_frac_points_validation():
    with pytest.raises(ValueError):
        FracPoints((Fraction(1),))
