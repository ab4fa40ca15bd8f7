"""Representations B = E^2 + gamma F^2 and their spread over short intervals.

For monic B of degree 2n, ``S(B)`` counts pairs (E, F) of monic polynomials
of degrees n and m with ``E^2 + gamma F^2 = B``.  The interval ``I(A; h)``
around a monic A of degree 2n holds the q^h monics agreeing with A outside the
h low coefficients.  Everything is exact: variances carry the denominator
q^(2n) explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import Field
from .polyring import FqPoly, monic_coefficient_array, monic_from_index, monic_index


class BadDegree(ValueError):
    pass


class GammaZero(ValueError):
    pass


class BadParameters(ValueError):
    pass


def check_params(n: int, m: int, h: int | None = None) -> None:
    if n < 1 or m < 0 or m > n - 1:
        raise BadParameters(f"need n >= 1 and 0 <= m <= n-1, got n={n}, m={m}")
    if h is not None and not 0 <= h <= 2 * n:
        raise BadParameters(f"need 0 <= h <= 2n = {2 * n}, got h={h}")


@dataclass(frozen=True)
class ScaledRational:
    """``numerator / q**exponent``."""

    numerator: int
    q: int
    exponent: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.q**self.exponent)

    @classmethod
    def from_fraction(cls, x: Fraction, q: int, exponent: int) -> ScaledRational:
        num = Fraction(x) * q**exponent
        if num.denominator != 1:
            raise ValueError(f"{x} does not have denominator dividing {q}^{exponent}")
        return cls(num.numerator, q, exponent)

    def __eq__(self, other):
        if not isinstance(other, ScaledRational):
            return NotImplemented
        return self.numerator * other.q**other.exponent == other.numerator * self.q**self.exponent

    def __hash__(self):
        return hash(self.as_fraction())

    def __str__(self):
        return str(self.as_fraction())

    def to_json(self) -> dict:
        return {"num": str(self.numerator), "scale": {"q": self.q, "exponent": self.exponent},
                "value": str(self.as_fraction())}


# --- the representation table ----------------------------------------------

def _squares(F: Field, coeffs: np.ndarray, scale: int = 1) -> np.ndarray:
    """Row-wise ``scale * P^2`` for a batch of coefficient rows."""
    rows, width = coeffs.shape
    add, mul = F.add_table, F.mul_table
    out = np.zeros((rows, 2 * width - 1), dtype=np.int64)
    for i in range(width):
        for j in range(width):
            out[:, i + j] = add[out[:, i + j], mul[coeffs[:, i], coeffs[:, j]]]
    if scale != 1:
        out = mul[scale, out]
    return out


@dataclass(frozen=True)
class STable:
    """``counts[i] = S(B_i)`` where ``B_i = monic_from_index(F, 2n, i)``."""

    field: Field
    n: int
    m: int
    gamma: int
    counts: np.ndarray

    def __getitem__(self, B: FqPoly) -> int:
        if B.degree != 2 * self.n or not B.is_monic:
            raise BadDegree(f"table covers monic degree {2 * self.n}")
        return int(self.counts[monic_index(B)])

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def build_s_table(F: Field, n: int, m: int, gamma) -> STable:
    """Forward enumeration of every (E, F) pair, binned by the index of E^2 + gamma F^2."""
    check_params(n, m)
    gamma = F.index_of(gamma)
    if gamma == 0:
        raise GammaZero("gamma must be non-zero")
    q = F.q
    e2 = _squares(F, monic_coefficient_array(F, n))
    f2 = _squares(F, monic_coefficient_array(F, m), gamma)
    # gamma F^2 has degree 2m < 2n, so only the low 2m+1 coefficients mix
    low = F.add_table[e2[:, None, :2 * m + 1], f2[None, :, :]]
    weights = q ** np.arange(2 * n, dtype=np.int64)
    high = e2[:, 2 * m + 1:2 * n] @ weights[2 * m + 1:]
    idx = (low @ weights[:2 * m + 1]) + high[:, None]
    counts = np.bincount(idx.ravel(), minlength=q ** (2 * n))
    return STable(F, n, m, gamma, counts)


def s_gamma_m(B: FqPoly, gamma, m: int) -> int:
    """Count (E, F) monic of degrees deg(B)/2 and m with E^2 + gamma F^2 = B, by direct search."""
    F = B.field
    gamma = F.index_of(gamma)
    if gamma == 0:
        raise GammaZero("gamma must be non-zero")
    if not B.is_monic or B.degree < 2 or B.degree % 2:
        raise BadDegree(f"need monic B of even degree >= 2, got degree {B.degree}")
    n = B.degree // 2
    if not 0 <= m <= n - 1:
        raise BadDegree(f"need 0 <= m <= {n - 1}, got {m}")
    g = FqPoly(F, (gamma,))
    found = 0
    for i in range(F.q**n):
        E = monic_from_index(F, n, i)
        E2 = E * E
        for j in range(F.q**m):
            G = monic_from_index(F, m, j)
            if E2 + g * G * G == B:
                found += 1
    return found


# --- interval statistics ----------------------------------------------------

def _interval_sums(table: STable, h: int) -> np.ndarray:
    """Sum of S over each interval class; the class is keyed by the 2n-h high coefficients."""
    q = table.field.q
    return table.counts.reshape(q ** (2 * table.n - h), q**h).sum(axis=1)


def square_sum_from_table(table: STable, h: int) -> int:
    check_params(table.n, table.m, h)
    sums = [int(s) for s in _interval_sums(table, h)]
    # each class is hit by q^h centres A
    return table.field.q**h * sum(s * s for s in sums)


def square_sum_brute(F: Field, n: int, m: int, h: int, gamma=1) -> int:
    """``sum_A (sum_{B in I(A;h)} S(B))^2`` over monic A of degree 2n."""
    check_params(n, m, h)
    return square_sum_from_table(build_s_table(F, n, m, gamma), h)


def mean_brute(F: Field, n: int, m: int, h: int, gamma=1) -> ScaledRational:
    check_params(n, m, h)
    table = build_s_table(F, n, m, gamma)
    total = F.q**h * sum(int(s) for s in _interval_sums(table, h))
    return ScaledRational(total, F.q, 2 * n)


def mean_closed(q: int, n: int, m: int, h: int) -> ScaledRational:
    """``q^(m+h-n)`` written over ``q^(2n)``."""
    check_params(n, m, h)
    return ScaledRational(q ** (m + h + n), q, 2 * n)


def variance_from_table(table: STable, h: int) -> ScaledRational:
    q, n, m = table.field.q, table.n, table.m
    # sum / q^2n - q^(2(m+h-n)), over the common denominator q^2n
    return ScaledRational(square_sum_from_table(table, h) - q ** (2 * m + 2 * h), q, 2 * n)


def variance_brute(F: Field, n: int, m: int, h: int, gamma=1) -> ScaledRational:
    """Variance over A of the interval sums, exactly, with denominator q^(2n)."""
    check_params(n, m, h)
    return variance_from_table(build_s_table(F, n, m, gamma), h)


# --- closed forms -----------------------------------------------------------

def variance_case(n: int, m: int, h: int) -> tuple[str, str]:
    """The (n, m) regime and the h-range selecting the closed-form expression."""
    check_params(n, m, h)
    if m == 0:
        return "m=0", ("n<=h" if h >= n else "0<=h<=n-1")
    if n <= 2 * m - 1:
        case = "m+1<=n<=2m-1"
        if h >= m:
            return case, "m<=h<=2n"
        if h >= 2 * m - n:
            return case, "2m-n<=h<=m-1"
        return case, "0<=h<=2m-n-1"
    if n == 2 * m:
        return "n=2m", ("m<=h" if h >= m else "0<=h<=m-1")
    case = "n>=2m+1"
    if h >= n:
        return case, "n<=h"
    if h >= 2 * m:
        return case, "2m<=h<=n-1"
    if h >= m:
        return case, "m<=h<=2m-1"
    return case, "0<=h<=m-1"


def variance_closed_fraction(q: int, n: int, m: int, h: int) -> Fraction:
    case, sub = variance_case(n, m, h)
    Q = Fraction(q)
    if sub in ("n<=h", "m<=h", "m<=h<=2n"):
        return Fraction(0)
    if case == "m=0":
        return Q**h / Q ** (2 * n) * (Q**n - Q**h)
    # the two ranges below carry minus signs: q^m - q^h and q^n - q^m
    if sub == "2m-n<=h<=m-1" or (case == "n=2m" and sub == "0<=h<=m-1"):
        return Q**h / Q**n * (Q**m - Q**h)
    if sub == "0<=h<=2m-n-1":
        return Q ** (m + h) / Q ** (2 * n) * (Q**n - Q**m + (2 * m - n - h) * (Q - 1) * Q ** (m - 1))
    if sub == "2m<=h<=n-1":
        return Q ** (2 * m + h) / Q ** (2 * n) * (Q**n - Q**h)
    if sub == "m<=h<=2m-1":
        return Q ** (2 * h) / Q ** (2 * n) * (Q**n - Q ** (2 * m))
    if sub == "0<=h<=m-1":
        return Q ** (m + h) / Q ** (2 * n) * (Q**n - Q ** (m + h))
    raise BadParameters(f"no closed form for n={n}, m={m}, h={h}")


def variance_closed(q: int, n: int, m: int, h: int) -> ScaledRational:
    return ScaledRational.from_fraction(variance_closed_fraction(q, n, m, h), q, 2 * n)


def square_sum_closed(q: int, n: int, m: int, h: int) -> int:
    """Square sum by h-range of the census regime."""
    from .charsum import census_regime
    regime, sub = census_regime(n, m, h)
    if sub in ("m<=h<=2n", "n<=h<=2n"):
        return q ** (2 * m + 2 * h)
    if sub == "2m-n<=h<=m-1":
        return q ** (2 * m + 2 * h) + q ** (n + m + h) - q ** (n + 2 * h)
    if sub == "0<=h<=2m-n-1":
        return (q ** (2 * m + 2 * h) + (2 * m - n - h) * (q - 1) * q ** (2 * m + h - 1)
                + q ** (n + m + h) - q ** (2 * m + h))
    if sub == "2m<=h<=n-1":
        return q ** (n + 2 * m + h)
    if sub == "m<=h<=2m-1":
        return q ** (n + 2 * h)
    return q ** (n + m + h)
