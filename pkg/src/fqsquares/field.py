"""Finite fields F_q of odd characteristic.

Elements are stored as integer indices ``0 <= i < q``.  The index of the
element ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` is ``sum(c_j * p**j)``, so the
prime subfield F_p sits at indices ``0 .. p-1`` and zero / one are ``0`` / ``1``.
Addition, multiplication, negation, inversion and the absolute trace are
precomputed into numpy lookup tables; everything that enumerates over F_q
works on index arrays through these tables.

:class:`FieldElement` wraps an index for interactive use and the public
operation signatures.
"""

from __future__ import annotations

import itertools
import operator
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Table construction is O(q^2); keep it well inside desk scale.
MAX_ORDER = 4096


class FieldError(ValueError):
    """Base class for invalid field constructions."""


class NonPrime(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class FieldMismatch(ValueError):
    """Operands live in different fields."""


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- dense polynomial helpers over F_p (little-endian int lists) -------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over F_p."""
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mi) % p
        _trim(a)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg(m)//2."""
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _pmod(m, list(low) + [1], p):
                return False
    return True


class Field:
    """The finite field F_q, q = p^k with p an odd prime.

    For ``k > 1`` a monic irreducible ``modulus`` of degree ``k`` over F_p must
    be supplied, coefficients listed low-to-high.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        p, k = int(p), int(k)
        if not is_prime(p):
            raise NonPrime(f"characteristic {p} is not prime")
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if k < 1:
            raise FieldError(f"extension degree must be >= 1, got {k}")
        if k == 1:
            if modulus is not None and len(modulus) not in (0, 2):
                raise FieldError("a prime field takes no modulus of degree > 1")
            modulus = None
        else:
            if modulus is None:
                raise FieldError(f"F_{p}^{k} needs a degree-{k} modulus")
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError(
                    f"modulus must be monic of degree {k}, got {modulus}")
            if not _is_irreducible(list(modulus), p):
                raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        if p**k > MAX_ORDER:
            raise FieldError(f"q = {p**k} exceeds MAX_ORDER = {MAX_ORDER}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus: tuple[int, ...] | None = modulus
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        digits = np.array(
            [[(i // p**j) % p for j in range(k)] for i in range(q)], dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        self._digits = digits
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        if k == 1:
            idx = np.arange(q, dtype=np.int64)
            mul = np.outer(idx, idx) % p
        else:
            mul = np.zeros((q, q), dtype=np.int64)
            m = list(self.modulus)
            for a in range(q):
                da = digits[a]
                for b in range(a, q):
                    prod = np.convolve(da, digits[b])
                    r = _pmod(prod.tolist(), m, p)
                    v = sum(c * p**j for j, c in enumerate(r))
                    mul[a, b] = mul[b, a] = v
        inv = np.full(q, -1, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.sub_table = add[:, neg]
        self.inv_table = inv
        self.square_table = mul[np.arange(q), np.arange(q)]
        # Tr(a) = a + a^p + ... + a^{p^{k-1}} lands in F_p = indices 0..p-1.
        tr = np.zeros(q, dtype=np.int64)
        for a in range(q):
            acc, frob = 0, a
            for _ in range(k):
                acc = add[acc, frob]
                frob = self._pow_index(frob, p, mul)
            if acc >= p:
                raise AssertionError("trace left the prime subfield")
            tr[a] = acc
        self.trace_table = tr
        for t in (add, neg, mul, inv, tr):
            t.setflags(write=False)

    @staticmethod
    def _pow_index(a: int, e: int, mul) -> int:
        r = 1
        while e:
            if e & 1:
                r = int(mul[r, a])
            a = int(mul[a, a])
            e >>= 1
        return r

    # -- identity ----------------------------------------------------------

    @property
    def key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.k == 1:
            return f"Field({self.p})"
        return f"Field({self.p}, {self.k}, modulus={list(self.modulus)})"

    def __str__(self):
        return f"F_{self.q}"

    def __reduce__(self):
        return (Field, (self.p, self.k, self.modulus))

    # -- scalar index arithmetic -------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        return self._pow_index(a, e, self.mul_table)

    def trace(self, a: int) -> int:
        return int(self.trace_table[a])

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[a])

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ValueError(f"at most {self.k} coefficients for {self}")
        return sum((int(c) % self.p) * self.p**j for j, c in enumerate(coeffs))

    # -- element-level API -------------------------------------------------

    def __call__(self, x) -> FieldElement:
        """Coerce ``x`` into the field.

        Integers embed through the prime subfield (``x mod p``); sequences are
        read as coefficient vectors.
        """
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x!r} is not in {self}")
            return x
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, int(x) % self.p)
        return FieldElement(self, self.from_coeffs(x))

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for {self}")
        return FieldElement(self, int(index))

    def index_of(self, x) -> int:
        """Element index of ``x``; plain ints are read as indices."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x!r} is not in {self}")
            return x.index
        x = int(x)
        if not 0 <= x < self.q:
            raise ValueError(f"index {x} out of range for {self}")
        return x

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @cached_property
    def lists(self):
        """Python-list copies of the tables, faster than numpy for scalar lookups."""
        return _TableLists(
            self.add_table.tolist(), self.sub_table.tolist(),
            self.mul_table.tolist(), self.neg_table.tolist(), self.inv_table.tolist())

    @cached_property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(range(1, self.q))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.q)]


@dataclass(frozen=True, slots=True)
class _TableLists:
    add: list
    sub: list
    mul: list
    neg: list
    inv: list


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: Field
    index: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other!r} is not in {self.field}")
            return other.index
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, i: int) -> FieldElement:
        return FieldElement(self.field, i)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.index, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.index))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.index, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.index))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.index, int(e)))

    def inv(self) -> FieldElement:
        return self._wrap(self.field.inv(self.index))

    def trace(self) -> int:
        return self.field.trace(self.index)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.index}"
        return "(" + ",".join(map(str, self.coeffs)) + ")"


# --- public operation surface -----------------------------------------------

def field_new(p: int, k: int = 1, modulus=None) -> Field:
    return Field(p, k, modulus)


_ARITH = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div, neg, inv}; unary ops ignore ``b``."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    try:
        fn = _ARITH[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(a, b)


def trace(a: FieldElement) -> int:
    return a.trace()


def enumerate_field(F: Field) -> list[FieldElement]:
    """All q elements, zero first, in index order."""
    return F.elements()


_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*:\s*([\d,\s]+))?\s*$")


def parse_field(spec: str) -> Field:
    """Parse ``p`` or ``p^k:c0,c1,...,ck`` (modulus low-to-high, ck = 1)."""
    m = _SPEC_RE.match(spec)
    if not m:
        raise FieldError(f"bad field spec {spec!r}; expected 'p' or 'p^k:c0,...,ck'")
    p = int(m.group(1))
    if p >= 2 and p & (p - 1) == 0:
        raise EvenCharacteristic(f"order {p} has characteristic 2, which is not supported")
    if m.group(2) is None:
        for base in range(3, int(p**0.5) + 1, 2):
            k, r = 0, p
            while r % base == 0:
                r //= base
                k += 1
            if r == 1 and is_prime(base):
                raise FieldError(f"{p} = {base}^{k} needs a modulus: '{base}^{k}:c0,...,c{k}'")
        return Field(p)
    k = int(m.group(2))
    modulus = [int(c) for c in m.group(3).split(",") if c.strip()]
    return Field(p, k, modulus)


def field_spec(F: Field) -> str:
    if F.k == 1:
        return str(F.p)
    return f"{F.p}^{F.k}:" + ",".join(map(str, F.modulus))
