"""Acceptance gate: each criterion at its full parameters, exact comparison only."""

import pytest

from fqsquares import Field, census_N, char_of_multiset, ms_named
from fqsquares.charsum import census_regime
from fqsquares.variance import build_s_table, square_sum_from_table, variance_case
from fqsquares.verify import (
    check_census, check_character_identity, check_counting, check_multiset_closed,
    check_pair_contribution, check_reduction, check_spot_values, check_theorem_grid,
)

F3, F5 = Field(3), Field(5)


def report(capsys, number, title, result):
    status = "PASS" if result.passed else "FAIL"
    with capsys.disabled():
        print(f"\n[criterion {number}] {status}: {title} "
              f"({result.checked} comparisons, {len(result.mismatches)} mismatches)")
    assert result.passed, result.mismatches[:10]


def test_criterion_1_variance_grid(capsys):
    result = check_theorem_grid([F3, F5], n_max=3)
    cases = {variance_case(n, m, h)[0] for n in range(1, 4) for m in range(n) for h in range(2 * n + 1)}
    assert cases == {"m+1<=n<=2m-1", "n=2m", "n>=2m+1", "m=0"}
    assert ("m+1<=n<=2m-1", "0<=h<=2m-n-1") == variance_case(3, 2, 0)
    report(capsys, 1, "variance brute = closed, q in {3,5}, n <= 3, all m, h, gamma", result)


def test_criterion_2_census(capsys):
    result = check_census(F3, n_max=3)
    ranges = {census_regime(n, m, h) for n, m in ((2, 1), (3, 2), (3, 1), (2, 0), (3, 0))
              for h in range(2 * n + 1)}
    assert len(ranges) == 3 + 4
    report(capsys, 2, "census closed = enumerated, q = 3", result)


def test_criterion_3_character_identity(capsys):
    report(capsys, 3, "square sum brute = via characters, q = 3",
           check_character_identity(F3, n_max=3))


def test_criterion_4_pair_contribution(capsys):
    result = check_pair_contribution(F3, n=2)
    assert result.checked >= 3**5
    report(capsys, 4, "pair contribution closed = direct over F_3^5, and pi_s >= 2 gives 0", result)


def test_criterion_5_reduction(capsys):
    report(capsys, 5, "P H P^T = red(H), rank and all three value multisets preserved, n <= 4, q = 3",
           check_reduction(F3, n_max=4))


def test_criterion_6_counting(capsys):
    report(capsys, 6, "fibers q^(t-1), partition counts, total q^(2n-1), n <= 4, q = 3",
           check_counting(F3, n_max=4))


def test_criterion_7_multiset_closed_forms(capsys):
    report(capsys, 7, "value multiset closed forms = enumeration, n <= 3 and l <= 4, q in {3,5}",
           check_multiset_closed([F3, F5], n_max=3, l_max=4))


def test_criterion_8_spot_values(capsys):
    result = check_spot_values(F3, n_max=3)
    q = 3
    assert char_of_multiset(ms_named(F3, "T")).to_int() == q
    for mu in (1, 2):
        assert ms_named(F3, "S", mu) + ms_named(F3, "S", F3.neg(mu)) == ms_named(F3, "T")
    expected = {
        "m<=h<=2n": lambda n, m, h: q ** (2 * m + 2 * h),
        "2m<=h<=n-1": lambda n, m, h: q ** (n + 2 * m + h),
        "m<=h<=2m-1": lambda n, m, h: q ** (n + 2 * h),
        "0<=h<=m-1": lambda n, m, h: q ** (n + m + h),
    }
    hit = set()
    for n, m in ((2, 1), (3, 2), (3, 1), (4, 1), (5, 1), (5, 2)):
        table = build_s_table(F3, n, m, 1)
        for h in range(2 * n + 1):
            regime, sub = census_regime(n, m, h)
            if sub in expected and not (sub == "m<=h<=2n" and regime != "m+1<=n<=2m"):
                result.expect(square_sum_from_table(table, h) == expected[sub](n, m, h), n=n, m=m, h=h)
                hit.add(sub)
            cells = {(c.rho2, c.rho1): c.count for c in census_N(F3, n, m, h)}
            result.expect(cells[(0, 0)] == q, n=n, m=m, h=h)
    assert hit == set(expected)
    report(capsys, 8, "spot values: T_q sum, S(mu)+S(-mu), census (0,0), square-sum regimes", result)
