from fractions import Fraction

import pytest

from fqsquares import (
    BadDegree, Field, FqPoly, GammaZero, ScaledRational, build_s_table, enumerate_monic,
    interval, mean_brute, mean_closed, s_gamma_m, square_sum_brute, variance_brute,
    variance_closed,
)
from fqsquares.charsum import interval_square_sum_via_characters
from fqsquares.variance import (
    BadParameters, square_sum_closed, variance_case, variance_closed_fraction,
)


def naive_square_sum(F, n, m, h, gamma):
    """Interval by interval, one representation search per polynomial."""
    cache = {}
    total = 0
    for A in enumerate_monic(F, 2 * n):
        s = 0
        for B in interval(A, h):
            if B.coeffs not in cache:
                cache[B.coeffs] = s_gamma_m(B, gamma, m)
            s += cache[B.coeffs]
        total += s * s
    return total


def test_s_gamma_m_spot_values(F3):
    B = FqPoly(F3, (1, 0, 1))
    assert s_gamma_m(B, 1, 0) == 1
    # T^2 + 2 = T^2 - 1 is not T^2 + e^2 + 1 ... E = T + e gives 2eT, so e = 0 and 1 != 2
    assert s_gamma_m(FqPoly(F3, (2, 0, 1)), 1, 0) == 0
    assert s_gamma_m(FqPoly(F3, (2, 0, 1)), 2, 0) == 1
    with pytest.raises(GammaZero):
        s_gamma_m(B, 0, 0)
    with pytest.raises(BadDegree):
        s_gamma_m(FqPoly(F3, (1, 1)), 1, 0)
    with pytest.raises(BadDegree):
        s_gamma_m(FqPoly(F3, (1, 0, 2)), 1, 0)
    with pytest.raises(BadDegree):
        s_gamma_m(B, 1, 1)


def test_table_matches_direct_search(F3, F5):
    for F, n, m, g in ((F3, 2, 1, 2), (F3, 2, 0, 1), (F5, 2, 1, 3)):
        table = build_s_table(F, n, m, g)
        assert table.total == F.q ** (n + m)
        for B in enumerate_monic(F, 2 * n):
            assert table[B] == s_gamma_m(B, g, m)


def test_table_mass_extension_field(F9):
    for n in (1, 2):
        for m in range(n):
            assert build_s_table(F9, n, m, 5).total == 9 ** (n + m)


def test_means(F3):
    assert mean_closed(3, 2, 1, 1) == ScaledRational(1, 3, 0)
    assert mean_closed(3, 2, 1, 0).as_fraction() == Fraction(1, 3)
    for n in (1, 2, 3):
        for m in range(n):
            for h in range(2 * n + 1):
                assert mean_brute(F3, n, m, h, 2) == mean_closed(3, n, m, h)


def test_scaled_rational_equality():
    assert ScaledRational(9, 3, 4) == ScaledRational(1, 3, 2)
    assert ScaledRational(9, 3, 4) != ScaledRational(2, 3, 2)
    assert ScaledRational.from_fraction(Fraction(4, 9), 3, 4).numerator == 36
    with pytest.raises(ValueError):
        ScaledRational.from_fraction(Fraction(1, 2), 3, 4)


def test_closed_spot_values():
    assert variance_closed(3, 2, 0, 0).as_fraction() == Fraction(8, 81)
    assert variance_closed(3, 3, 1, 1) == ScaledRational(162, 3, 6)
    assert variance_closed(3, 2, 1, 1).as_fraction() == 0
    # n = 2m, h < m: (q^h / q^n)(q^m - q^h)
    assert variance_closed(3, 2, 1, 0).as_fraction() == Fraction(2, 9)


def test_brute_spot_values(F3):
    assert variance_brute(F3, 2, 1, 1) == ScaledRational(0, 3, 4)
    assert variance_brute(F3, 2, 1, 0, 1) == variance_brute(F3, 2, 1, 0, 2) == variance_closed(3, 2, 1, 0)
    assert square_sum_brute(F3, 2, 1, 2) == 729
    assert square_sum_brute(F3, 2, 1, 4) == 3**10
    assert square_sum_brute(F3, 3, 1, 0) == 81


@pytest.mark.parametrize("n,m,h", [(2, 1, 0), (2, 0, 1), (3, 2, 0), (3, 2, 1), (3, 1, 0), (3, 1, 1)])
def test_naive_route_agrees(F3, n, m, h):
    brute = square_sum_brute(F3, n, m, h, 2)
    assert naive_square_sum(F3, n, m, h, 2) == brute
    assert interval_square_sum_via_characters(F3, n, m, h) == brute


def test_plus_sign_variant_disagrees_with_enumeration(F3):
    """With + in place of the two minus signs the closed form overshoots the true variance."""
    q = 3
    for n, m, h in ((2, 1, 0), (3, 2, 1)):
        plus = Fraction(q**h, q**n) * (q**m + q**h)
        assert variance_brute(F3, n, m, h).as_fraction() != plus
    n, m, h = 3, 2, 0
    plus = Fraction(q ** (m + h), q ** (2 * n)) * (q**n + q**m + (2 * m - n - h) * (q - 1) * q ** (m - 1))
    assert variance_brute(F3, n, m, h).as_fraction() == Fraction(8, 27) != plus


def test_case_dispatch_is_total():
    labels = set()
    for n in range(1, 12):
        for m in range(n):
            for h in range(2 * n + 1):
                labels.add(variance_case(n, m, h))
                variance_closed_fraction(5, n, m, h)
    assert len(labels) == 3 + 2 + 4 + 2
    with pytest.raises(BadParameters):
        variance_case(2, 2, 0)
    with pytest.raises(BadParameters):
        variance_case(2, 1, 5)


def test_h_ranges_partition_each_case():
    for n in range(1, 10):
        for m in range(n):
            seen = {}
            for h in range(2 * n + 1):
                case, sub = variance_case(n, m, h)
                seen.setdefault(sub, []).append(h)
            for hs in seen.values():
                assert hs == list(range(hs[0], hs[-1] + 1))


def test_closed_nonnegative():
    for q in (3, 5, 7, 9):
        for n in range(1, 7):
            for m in range(n):
                for h in range(2 * n + 1):
                    assert variance_closed_fraction(q, n, m, h) >= 0


def test_square_sum_closed_consistent_with_variance():
    for q in (3, 5, 7):
        for n in range(1, 7):
            for m in range(n):
                for h in range(2 * n + 1):
                    v = Fraction(square_sum_closed(q, n, m, h), q ** (2 * n)) - Fraction(q) ** (2 * (m + h - n))
                    assert v == variance_closed_fraction(q, n, m, h)


@pytest.mark.parametrize("q", [3, 5])
def test_grid_brute_equals_closed(q):
    F = Field(q)
    for n in range(1, 4):
        for m in range(n):
            for g in F.nonzero:
                for h in range(2 * n + 1):
                    assert variance_brute(F, n, m, h, g) == variance_closed(q, n, m, h)


def test_extension_field_grid(F9):
    for n in (1, 2):
        for m in range(n):
            for g in (1, 4, 7):
                for h in range(2 * n + 1):
                    assert variance_brute(F9, n, m, h, g) == variance_closed(9, n, m, h)


def test_bad_parameters(F3):
    with pytest.raises(BadParameters):
        variance_brute(F3, 2, 2, 0)
    with pytest.raises(GammaZero):
        variance_brute(F3, 2, 1, 0, 0)
