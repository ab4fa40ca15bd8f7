"""Exact additive character sums and the rank census behind the square sum.

A character sum ``sum_a m(a) psi(a)`` with ``psi(a) = zeta_p^Tr(a)`` is an
element of Z[zeta_p].  It is stored as the vector of multiplicities per trace
residue; two vectors denote the same number iff they differ by a constant,
since ``1 + zeta + ... + zeta^(p-1) = 0`` spans the relations.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .field import Field
from .hankel import HankelMatrix, strict_rho_pi
from .multiset import MultisetFq, values_quadform


class BadParameters(ValueError):
    pass


class NotAnInteger(ArithmeticError):
    pass


@dataclass(frozen=True)
class CharSumValue:
    p: int
    residue_counts: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.residue_counts)
        if len(c) != self.p:
            raise ValueError(f"need {self.p} residue counts, got {len(c)}")
        lo = min(c)
        object.__setattr__(self, "residue_counts", tuple(x - lo for x in c))

    @classmethod
    def integer(cls, p: int, n: int) -> CharSumValue:
        return cls(p, (n,) + (0,) * (p - 1))

    @property
    def is_integer(self) -> bool:
        rest = self.residue_counts[1:]
        return all(r == rest[0] for r in rest)

    def to_int(self) -> int:
        if not self.is_integer:
            raise NotAnInteger(f"{self} is not a rational integer")
        c = self.residue_counts
        return c[0] - c[1]

    def __mul__(self, other: CharSumValue) -> CharSumValue:
        return charsum_mul(self, other)

    def __add__(self, other: CharSumValue) -> CharSumValue:
        if other.p != self.p:
            raise ValueError("different characteristics")
        return CharSumValue(self.p, tuple(a + b for a, b in zip(self.residue_counts, other.residue_counts)))

    def to_complex(self) -> complex:
        """Floating-point value, for display only."""
        z = np.exp(2j * np.pi * np.arange(self.p) / self.p)
        return complex(np.dot(self.residue_counts, z))

    def __repr__(self):
        if self.is_integer:
            return f"CharSumValue({self.to_int()})"
        return f"CharSumValue(p={self.p}, {self.residue_counts})"


def char_of_multiset(A: MultisetFq) -> CharSumValue:
    F = A.field
    out = [0] * F.p
    for a, c in enumerate(A.counts):
        if c:
            out[int(F.trace_table[a])] += c
    return CharSumValue(F.p, tuple(out))


def charsum_mul(x: CharSumValue, y: CharSumValue) -> CharSumValue:
    if x.p != y.p:
        raise ValueError("different characteristics")
    p = x.p
    out = [0] * p
    for i, a in enumerate(x.residue_counts):
        if a:
            for j, b in enumerate(y.residue_counts):
                out[(i + j) % p] += a * b
    return CharSumValue(p, tuple(out))


def orthogonality_sum(F: Field, b) -> Fraction:
    """``(1/q) * sum_alpha psi(alpha * b)``, which is 1 at b = 0 and 0 elsewhere."""
    b = F.index_of(b)
    mul = F.lists.mul
    ms = MultisetFq.from_values(F, (mul[a][b] for a in range(F.q)))
    return Fraction(char_of_multiset(ms).to_int(), F.q)


# --- pair contributions -----------------------------------------------------

def _square(F: Field, alpha, n: int) -> HankelMatrix:
    alpha = tuple(F.index_of(a) for a in alpha)
    if len(alpha) != 2 * n + 1:
        raise BadParameters(f"need 2n+1 = {2 * n + 1} terms, got {len(alpha)}")
    return HankelMatrix(F, n + 1, n + 1, alpha)


def _direct_form_values(F: Field, alpha: tuple[int, ...], n: int) -> np.ndarray:
    """``sum_{i,j} alpha_{i+j} e_i e_j`` for every e in F^n x {1}, summed skew-diagonal by skew-diagonal."""
    q = F.q
    idx = np.arange(q**n, dtype=np.int64)
    e = [(idx // q**j) % q for j in range(n)] + [np.ones_like(idx)]
    add, mul = F.add_table, F.mul_table
    acc = np.zeros(len(idx), dtype=np.int64)
    for k, a in enumerate(alpha):
        if not a:
            continue
        conv = np.zeros(len(idx), dtype=np.int64)
        for i in range(max(0, k - n), min(k, n) + 1):
            conv = add[conv, mul[e[i], e[k - i]]]
        acc = add[acc, mul[a, conv]]
    return acc


def pair_contribution(F: Field, alpha, n: int, method: str = "multiset") -> int:
    """``(sum_e psi(e^T H(alpha) e)) * (sum_f psi(f^T H(-alpha) f))`` over e, f in F^n x {1}.

    ``multiset`` multiplies the two exact character sums of the value multisets,
    ``closed`` uses the rank shape (0 when pi_s >= 2, else q^(2n - rho_s)),
    ``direct`` sums psi over all (q^n)^2 vector pairs.
    """
    H = _square(F, alpha, n)
    if method == "closed":
        rho, pi = strict_rho_pi(H)
        return 0 if pi >= 2 else F.q ** (2 * n - rho)
    if method == "multiset":
        neg = H.scaled(F.neg(1))
        x = char_of_multiset(values_quadform(H, "monic"))
        y = char_of_multiset(values_quadform(neg, "monic"))
        return (x * y).to_int()
    if method == "direct":
        neg = F.lists.neg
        plus = _direct_form_values(F, H.seq, n)
        minus = _direct_form_values(F, tuple(neg[a] for a in H.seq), n)
        tr = F.trace_table
        # psi(a) psi(b) = zeta^(Tr a + Tr b)
        res = (tr[plus][:, None] + tr[minus][None, :]) % F.p
        return CharSumValue(F.p, tuple(np.bincount(res.ravel(), minlength=F.p).tolist())).to_int()
    raise ValueError(f"unknown method {method!r}")


# --- census -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CensusCell:
    rho2: int
    rho1: int
    count: int


def check_census_params(n: int, m: int, h: int) -> None:
    if m < 0 or n < m + 1:
        raise BadParameters(f"need 0 <= m <= n-1, got n={n}, m={m}")
    if not 0 <= h <= 2 * n:
        raise BadParameters(f"need 0 <= h <= 2n = {2 * n}, got h={h}")


def census_regime(n: int, m: int, h: int) -> tuple[str, str]:
    """Which (n, m) regime and which h-range the triple falls in."""
    check_census_params(n, m, h)
    if m >= 1 and m + 1 <= n <= 2 * m:
        regime = "m+1<=n<=2m"
        if h >= m:
            return regime, "m<=h<=2n"
        if h >= 2 * m - n:
            return regime, "2m-n<=h<=m-1"
        return regime, "0<=h<=2m-n-1"
    regime = "n>=2m+1"
    if h >= n:
        return regime, "n<=h<=2n"
    if h >= 2 * m:
        return regime, "2m<=h<=n-1"
    if h >= m:
        return regime, "m<=h<=2m-1"
    return regime, "0<=h<=m-1"


def _closed_cells(q: int, n: int, m: int, h: int) -> dict[tuple[int, int], int]:
    regime, sub = census_regime(n, m, h)
    cells = {(0, 0): q}

    def diagonal(lo):
        for r2 in range(lo, m + 1):
            cells[(r2, r2)] = (q - 1) * q ** (2 * r2 - h)

    def paired(lo):
        for r2 in range(lo, m + 1):
            for r1 in range(2 * m + 1 - r2, n + 1):
                cells[(r2, r1)] = (q - 1) ** 2 * q ** (2 * r1 + 2 * r2 - 2 * m - h - 1)

    if regime == "m+1<=n<=2m":
        if sub == "2m-n<=h<=m-1":
            diagonal(h + 1)
            paired(h + 1)
        elif sub == "0<=h<=2m-n-1":
            diagonal(h + 1)
            paired(2 * m + 1 - n)
    else:
        if sub == "2m<=h<=n-1":
            for r1 in range(h + 1, n + 1):
                cells[(0, r1)] = (q - 1) * q ** (2 * r1 - h)
        elif sub in ("m<=h<=2m-1", "0<=h<=m-1"):
            for r1 in range(2 * m + 1, n + 1):
                cells[(0, r1)] = (q - 1) * q ** (2 * r1 - 2 * m)
            if sub == "0<=h<=m-1":
                diagonal(h + 1)
                paired(h + 1)
    return cells


@lru_cache(maxsize=None)
def _rho_pi_prefix(F: Field, seq: tuple[int, ...]) -> tuple[int, int]:
    size = (len(seq) + 1) // 2
    return strict_rho_pi(HankelMatrix(F, size, size, seq))


def _census_shard(F: Field, n: int, m: int, h: int, prefix: tuple[int, ...]):
    """Scan every alpha in L^h_{2n} whose top coordinates equal ``prefix``."""
    kept: dict[tuple[int, int], int] = {}
    excluded = []
    free = 2 * n + 1 - h - len(prefix)
    for mid in itertools.product(range(F.q), repeat=free):
        alpha = (0,) * h + mid + prefix
        r2, p2 = _rho_pi_prefix(F, alpha[:2 * m + 1])
        r1, p1 = _rho_pi_prefix(F, alpha)
        if p2 <= 1 and p1 <= 1:
            kept[(r2, r1)] = kept.get((r2, r1), 0) + 1
        else:
            excluded.append(alpha)
    return kept, excluded


@dataclass(frozen=True)
class CensusScan:
    cells: tuple[CensusCell, ...]
    excluded: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        return sum(c.count for c in self.cells) + len(self.excluded)


def census_scan(F: Field, n: int, m: int, h: int, shards: int = 1) -> CensusScan:
    """Enumerate L^h_{2n}, binning kept sequences and listing the excluded ones."""
    check_census_params(n, m, h)
    free = 2 * n + 1 - h
    # shard on the top coordinates so each worker sees a disjoint slab
    depth = 0
    while shards > 1 and F.q ** depth < shards and depth < free:
        depth += 1
    prefixes = list(itertools.product(range(F.q), repeat=depth))
    if shards > 1 and len(prefixes) > 1:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            parts = list(pool.map(_census_shard, *zip(*((F, n, m, h, pr) for pr in prefixes))))
    else:
        parts = [_census_shard(F, n, m, h, pr) for pr in prefixes]
    merged: dict[tuple[int, int], int] = {}
    excluded = []
    for kept, exc in parts:
        for k, v in kept.items():
            merged[k] = merged.get(k, 0) + v
        excluded.extend(exc)
    cells = tuple(CensusCell(r2, r1, c) for (r2, r1), c in sorted(merged.items()))
    return CensusScan(cells, tuple(sorted(excluded)))


def census_N(F: Field, n: int, m: int, h: int, mode: str = "closed", shards: int = 1) -> list[CensusCell]:
    """Number of alpha in L^h_{2n} per (rho2, rho1), counting only alpha where both
    H_{m+1}(alpha) and H_{n+1}(alpha) have pi_s in {0, 1}.

    Cells are sorted by (rho2, rho1); absent cells are zero.
    """
    check_census_params(n, m, h)
    if mode == "closed":
        return [CensusCell(r2, r1, c) for (r2, r1), c in sorted(_closed_cells(F.q, n, m, h).items())]
    if mode == "enumerate":
        return list(census_scan(F, n, m, h, shards).cells)
    raise ValueError(f"unknown mode {mode!r}")


def interval_square_sum_via_characters(F: Field, n: int, m: int, h: int,
                                       mode: str = "closed") -> int:
    """``q^(2m+2h-1) * sum N(rho2, rho1) q^(-rho1-rho2)``, accumulated exactly."""
    q = F.q
    total = Fraction(0)
    for c in census_N(F, n, m, h, mode):
        total += c.count * Fraction(q) ** (2 * m + 2 * h - 1 - c.rho1 - c.rho2)
    if total.denominator != 1:
        raise NotAnInteger(f"square sum came out as {total}")
    return total.numerator


def interval_square_sum_via_pairs(F: Field, n: int, m: int, h: int, gamma=1,
                                  method: str = "closed") -> int:
    """``q^-(2n-2h+1) * sum_alpha pair_n(alpha) * pair_m(gamma * alpha)`` over L^h_{2n}."""
    check_census_params(n, m, h)
    gamma = F.index_of(gamma)
    if gamma == 0:
        raise BadParameters("gamma must be non-zero")
    mul = F.lists.mul[gamma]
    total = 0
    for free in itertools.product(range(F.q), repeat=2 * n + 1 - h):
        alpha = (0,) * h + free
        a = pair_contribution(F, alpha, n, method)
        if a:
            b = pair_contribution(F, tuple(mul[x] for x in alpha[:2 * m + 1]), m, method)
            total += a * b
    value = total / Fraction(F.q) ** (2 * n - 2 * h + 1)
    if value.denominator != 1:
        raise NotAnInteger(f"square sum came out as {value}")
    return value.numerator
