"""Closed form versus enumeration, one check per verified claim.

Each ``check_*`` returns a :class:`CheckResult` listing every mismatch with the
parameters that produced it.  ``run_all`` composes them; the CLI's
``verify-all`` and the acceptance tests both go through here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .charsum import (
    census_N, census_regime, census_scan, char_of_multiset,
    interval_square_sum_via_characters, pair_contribution,
)
from .field import Field
from .hankel import (
    HankelMatrix, TriangularBlock, all_partitions, count_hankel_with_reduced,
    count_reduced_with_partition, congruence, enumerate_hankel, rank,
    reduce_with_certificate, reduction_fibers, strict_rho_pi,
)
from .multiset import (
    products, scaled_squares, values_closed_hankel, values_closed_triangular,
    values_quadform,
)
from .variance import (
    build_s_table, square_sum_closed, square_sum_from_table, variance_case,
    variance_closed, variance_from_table,
)

CENSUS_PAIRS = ((2, 1), (3, 2), (3, 1), (2, 0), (3, 0))


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    mismatches: list[dict] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.mismatches

    def expect(self, ok: bool, **params) -> None:
        self.checked += 1
        if not ok:
            self.mismatches.append(params)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "mismatches": [{k: _jsonable(v) for k, v in m.items()} for m in self.mismatches]}


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return str(v)


def check_theorem_grid(fields, n_max: int = 3) -> CheckResult:
    res = CheckResult("variance brute = closed")
    for F in fields:
        for n in range(1, n_max + 1):
            for m in range(n):
                for gamma in F.nonzero:
                    table = build_s_table(F, n, m, gamma)
                    for h in range(2 * n + 1):
                        brute = variance_from_table(table, h)
                        closed = variance_closed(F.q, n, m, h)
                        res.expect(brute == closed, q=F.q, n=n, m=m, h=h, gamma=gamma,
                                   case=variance_case(n, m, h), brute=brute, closed=closed)
    return res


def _census_pairs(n_max: int):
    return [(n, m) for n, m in CENSUS_PAIRS if n <= n_max]


def check_census(F: Field, n_max: int = 3) -> CheckResult:
    res = CheckResult("census closed = enumerated")
    for n, m in _census_pairs(n_max):
        for h in range(2 * n + 1):
            scan = census_scan(F, n, m, h)
            enum = {(c.rho2, c.rho1): c.count for c in scan.cells}
            closed = {(c.rho2, c.rho1): c.count for c in census_N(F, n, m, h, "closed")}
            for key in sorted(set(enum) | set(closed)):
                res.expect(enum.get(key, 0) == closed.get(key, 0), n=n, m=m, h=h, cell=key,
                           enumerated=enum.get(key, 0), closed=closed.get(key, 0))
            res.expect(scan.total == F.q ** (2 * n + 1 - h), n=n, m=m, h=h, what="sequence total")
            for alpha in scan.excluded:
                # a sequence outside the census has no square-sum weight
                w = pair_contribution(F, alpha, n) * pair_contribution(F, alpha[:2 * m + 1], m)
                res.expect(w == 0, n=n, m=m, h=h, alpha=alpha, weight=w)
    return res


def check_character_identity(F: Field, n_max: int = 3) -> CheckResult:
    res = CheckResult("square sum brute = via characters")
    for n, m in _census_pairs(n_max):
        tables = [build_s_table(F, n, m, g) for g in F.nonzero]
        for h in range(2 * n + 1):
            chars = interval_square_sum_via_characters(F, n, m, h, "closed")
            chars_enum = interval_square_sum_via_characters(F, n, m, h, "enumerate")
            res.expect(chars == chars_enum, n=n, m=m, h=h, closed_census=chars, enumerated_census=chars_enum)
            for g, t in zip(F.nonzero, tables):
                brute = square_sum_from_table(t, h)
                res.expect(brute == chars, n=n, m=m, h=h, gamma=g, brute=brute, characters=chars)
    return res


def check_pair_contribution(F: Field, n: int = 2) -> CheckResult:
    res = CheckResult("pair contribution closed = direct")
    for alpha in itertools.product(range(F.q), repeat=2 * n + 1):
        closed = pair_contribution(F, alpha, n, "closed")
        direct = pair_contribution(F, alpha, n, "direct")
        via_ms = pair_contribution(F, alpha, n, "multiset")
        res.expect(closed == direct == via_ms, alpha=alpha, closed=closed, direct=direct, multiset=via_ms)
        _, pi = strict_rho_pi(HankelMatrix(F, n + 1, n + 1, alpha))
        if pi >= 2:
            res.expect(direct == 0, alpha=alpha, pi_s=pi, direct=direct)
    return res


def check_reduction(F: Field, n_max: int = 4) -> CheckResult:
    res = CheckResult("reduction congruence and value invariance")
    for n in range(1, n_max + 1):
        for H in enumerate_hankel(F, n):
            R, P = reduce_with_certificate(H)
            rendered = R.render()
            res.expect(np.array_equal(congruence(F, P, H), rendered), seq=H.seq, what="P H P^T")
            res.expect(rank(P, F) == n, seq=H.seq, what="P invertible")
            res.expect(rank(H) == rank(rendered, F), seq=H.seq, what="rank")
            for mode in ("monic", "full", "last1"):
                res.expect(values_quadform(H, mode) == values_quadform(rendered, mode, F),
                           seq=H.seq, mode=mode)
    return res


def check_counting(F: Field, n_max: int = 4) -> CheckResult:
    res = CheckResult("reduction fibers and partition counts")
    q = F.q
    for n in range(1, n_max + 1):
        for M, size in reduction_fibers(F, n).items():
            res.expect(size == count_hankel_with_reduced(M, F), n=n, partition=M.partition.as_tuple(),
                       fiber=size)
        total = 0
        for P in all_partitions(n):
            closed = count_reduced_with_partition(P, F, "closed")
            enum = count_reduced_with_partition(P, F, "enumerate")
            res.expect(closed == enum, n=n, partition=P.as_tuple(), closed=closed, enumerated=enum)
            total += closed * q ** (P.t - 1)
        res.expect(total == q ** (2 * n - 1), n=n, total=total)
    return res


def check_multiset_closed(fields, n_max: int = 3, l_max: int = 4) -> CheckResult:
    res = CheckResult("multiset closed forms = enumeration")
    for F in fields:
        for n in range(1, n_max + 1):
            for H in enumerate_hankel(F, n):
                res.expect(values_closed_hankel(H) == values_quadform(H, "monic"), q=F.q, seq=H.seq)
        for l in range(1, l_max + 1):
            for lam in F.nonzero:
                for belly in itertools.product(range(F.q), repeat=l - 1):
                    block = TriangularBlock(F, l, lam, belly).as_hankel()
                    for mode in ("full", "monic"):
                        res.expect(values_closed_triangular(F, l, lam, mode) == values_quadform(block, mode),
                                   q=F.q, l=l, lam=lam, belly=belly, mode=mode)
    return res


def check_spot_values(F: Field, n_max: int = 3) -> CheckResult:
    res = CheckResult("known spot values")
    q = F.q
    res.expect(char_of_multiset(products(F)).to_int() == q, what="character sum over T_q")
    for mu in F.nonzero:
        res.expect(scaled_squares(F, mu) + scaled_squares(F, F.neg(mu)) == products(F), mu=mu)
    for n in range(1, n_max + 1):
        for m in range(n):
            tables = {}
            for h in range(2 * n + 1):
                cells = {(c.rho2, c.rho1): c.count for c in census_N(F, n, m, h)}
                res.expect(cells.get((0, 0)) == q, n=n, m=m, h=h, what="census (0,0)")
                if (n, m) not in tables:
                    tables[(n, m)] = build_s_table(F, n, m, 1)
                brute = square_sum_from_table(tables[(n, m)], h)
                res.expect(brute == square_sum_closed(q, n, m, h), n=n, m=m, h=h,
                           regime=census_regime(n, m, h), brute=brute)
    return res


def run_all(F: Field, n_max: int = 3, fields=None) -> list[CheckResult]:
    """Every check at the given field and size bound (pair contributions at n = min(2, n_max))."""
    fields = fields or [F]
    return [
        check_theorem_grid(fields, n_max),
        check_census(F, n_max),
        check_character_identity(F, n_max),
        check_pair_contribution(F, min(2, n_max)),
        check_reduction(F, n_max),
        check_counting(F, n_max),
        check_multiset_closed(fields, min(n_max, 3)),
        check_spot_values(F, n_max),
    ]
