"""Polynomials over F_q, monic enumeration and intervals I(A; h).

Coefficients are element indices, little-endian (``coeffs[i]`` is the
coefficient of T^i), with trailing zeros trimmed so the zero polynomial is
``()`` and has degree ``-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .field import Field, FieldElement, FieldMismatch

NEG_INF = -math.inf


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class FqPoly:
    field: Field
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))
        q = self.field.q
        if any(not 0 <= c < q for c in self.coeffs):
            raise ValueError(f"coefficient out of range for {self.field}")

    @classmethod
    def from_elements(cls, F: Field, coeffs) -> FqPoly:
        return cls(F, tuple(F.index_of(c) for c in coeffs))

    @classmethod
    def monomial(cls, F: Field, d: int) -> FqPoly:
        return cls(F, (0,) * d + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, i: int) -> FieldElement:
        if i < 0:
            raise IndexError("coefficient index must be >= 0")
        return self.field.element(self.coeffs[i] if i < len(self.coeffs) else 0)

    def _check(self, other: FqPoly) -> None:
        if not isinstance(other, FqPoly):
            raise TypeError(f"expected FqPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FqPoly(F, tuple(F.add(x, y) for x, y in zip(a, b)))

    def __neg__(self) -> FqPoly:
        return FqPoly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        return self + (-other)

    def __mul__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return FqPoly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return FqPoly(F, tuple(out))

    def scale(self, c) -> FqPoly:
        c = self.field.index_of(c)
        return FqPoly(self.field, tuple(self.field.mul(c, a) for a in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = repr(F.element(c))
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)


def poly_arith(A: FqPoly, B: FqPoly, op: str) -> FqPoly:
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A * B
    raise ValueError(f"unknown op {op!r}")


def coefficient(C: FqPoly, i: int) -> FieldElement:
    return C.coefficient(i)


def monic_from_index(F: Field, n: int, idx: int) -> FqPoly:
    """Monic degree-``n`` polynomial whose low coefficients are the base-q digits of ``idx``."""
    q = F.q
    low = []
    for _ in range(n):
        idx, r = divmod(idx, q)
        low.append(r)
    return FqPoly(F, tuple(low) + (1,))


def monic_index(B: FqPoly) -> int:
    """Inverse of :func:`monic_from_index` (B must be monic)."""
    if not B.is_monic:
        raise ValueError("monic polynomial expected")
    q = B.field.q
    return sum(c * q**i for i, c in enumerate(B.coeffs[:-1]))


def enumerate_monic(F: Field, n: int) -> Iterator[FqPoly]:
    """All q^n monic polynomials of degree n in canonical index order."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    for idx in range(F.q**n):
        yield monic_from_index(F, n, idx)


def monic_coefficient_array(F: Field, n: int) -> np.ndarray:
    """``(q^n, n+1)`` array of coefficients of every monic degree-n polynomial.

    Row ``i`` is ``monic_from_index(F, n, i)``.
    """
    q = F.q
    idx = np.arange(q**n, dtype=np.int64)
    cols = [(idx // q**j) % q for j in range(n)]
    cols.append(np.ones_like(idx))
    return np.stack(cols, axis=1)


def in_interval(B: FqPoly, A: FqPoly, h: int) -> bool:
    """True iff deg(B - A) < h."""
    if h < 0:
        raise ValueError("radius must be >= 0")
    return (B - A).degree < h


def interval(A: FqPoly, h: int) -> Iterator[FqPoly]:
    """Enumerate I(A; h) by replacing the h low coefficients of A."""
    if h < 0:
        raise ValueError("radius must be >= 0")
    F = A.field
    q = F.q
    base = list(A.coeffs) + [0] * max(0, h - len(A.coeffs))
    for idx in range(q**h):
        c = list(base)
        for i in range(h):
            idx, c[i] = divmod(idx, q)
        yield FqPoly(F, tuple(c))


def parse_poly(F: Field, text: str) -> FqPoly:
    """``"2,0,1"`` is T^2 + 2 over F_3 (coefficients low-to-high, element indices)."""
    parts = [s.strip() for s in text.split(",") if s.strip()]
    return FqPoly(F, tuple(F.index_of(int(s)) for s in parts))
