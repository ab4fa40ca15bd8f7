"""Finite multisets over F_q as dense multiplicity vectors.

``A + B`` is the sumset (additive convolution), ``A | B`` the union
(pointwise sum of multiplicities) and ``n * A`` the n-fold sumset with
``0 * A == [0]``.  Counts are Python ints so masses like ``q**(q**3)``-sized
zero blocks never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field, FieldMismatch
from .hankel import HankelMatrix, ReducedForm, reduce


@dataclass(frozen=True)
class MultisetFq:
    field: Field
    counts: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.counts)
        if len(c) != self.field.q:
            raise ValueError(f"need {self.field.q} multiplicities, got {len(c)}")
        if any(x < 0 for x in c):
            raise ValueError("multiplicities must be non-negative")
        object.__setattr__(self, "counts", c)

    @classmethod
    def empty(cls, F: Field) -> MultisetFq:
        return cls(F, (0,) * F.q)

    @classmethod
    def from_values(cls, F: Field, values) -> MultisetFq:
        c = [0] * F.q
        for v in values:
            c[F.index_of(v)] += 1
        return cls(F, tuple(c))

    @property
    def mass(self) -> int:
        return sum(self.counts)

    def multiplicity(self, a) -> int:
        return self.counts[self.field.index_of(a)]

    def as_dict(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.counts) if c}

    def _check(self, other) -> None:
        if not isinstance(other, MultisetFq):
            raise TypeError(f"expected MultisetFq, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __or__(self, other: MultisetFq) -> MultisetFq:
        self._check(other)
        return MultisetFq(self.field, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __add__(self, other: MultisetFq) -> MultisetFq:
        self._check(other)
        add = self.field.lists.add
        out = [0] * self.field.q
        for a, ca in enumerate(self.counts):
            if ca:
                row = add[a]
                for b, cb in enumerate(other.counts):
                    if cb:
                        out[row[b]] += ca * cb
        return MultisetFq(self.field, tuple(out))

    def __rmul__(self, n: int) -> MultisetFq:
        return ms_nfold(self, n)

    def __repr__(self):
        return f"MultisetFq({self.field}, {self.as_dict()})"


def ms_union(A: MultisetFq, B: MultisetFq) -> MultisetFq:
    return A | B


def ms_sumset(A: MultisetFq, B: MultisetFq) -> MultisetFq:
    return A + B


def ms_nfold(A: MultisetFq, n: int) -> MultisetFq:
    if n < 0:
        raise ValueError("n-fold sumset needs n >= 0")
    out = zeros(A.field, 1)
    base = A
    # square-and-multiply; the sumset is associative and commutative
    while n:
        if n & 1:
            out = out + base
        n >>= 1
        if n:
            base = base + base
    return out


# --- named multisets --------------------------------------------------------

def uniform(F: Field) -> MultisetFq:
    """Every element once."""
    return MultisetFq(F, (1,) * F.q)


def products(F: Field) -> MultisetFq:
    """``[v1 * v2 : v1, v2 in F_q]``: zero ``2q - 1`` times, every unit ``q - 1`` times."""
    q = F.q
    return MultisetFq(F, (2 * q - 1,) + (q - 1,) * (q - 1))


def zeros(F: Field, n: int) -> MultisetFq:
    """``n`` copies of zero."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return MultisetFq(F, (n,) + (0,) * (F.q - 1))


def scaled_squares(F: Field, lam) -> MultisetFq:
    """``[lam * a^2 : a in F_q]``."""
    lam = F.index_of(lam)
    mul = F.lists.mul[lam]
    return MultisetFq.from_values(F, (mul[s] for s in F.square_table.tolist()))


def singleton(F: Field, a) -> MultisetFq:
    return MultisetFq.from_values(F, [a])


def ms_named(F: Field, which: str, arg=None) -> MultisetFq:
    """Named multisets: ``"F"``, ``"T"``, ``"Z"`` (arg = n >= 1) and ``"S"`` (arg = lambda)."""
    key = which.upper().removesuffix("Q")
    if key == "F":
        return uniform(F)
    if key == "T":
        return products(F)
    if key == "Z":
        if arg is None or int(arg) < 1:
            raise ValueError("Z needs a count n >= 1")
        return zeros(F, int(arg))
    if key == "S":
        if arg is None:
            raise ValueError("S needs a scale lambda")
        return scaled_squares(F, arg)
    raise ValueError(f"unknown named multiset {which!r}")


# --- quadratic-form values --------------------------------------------------

def _dense(M, F: Field | None) -> tuple[Field, np.ndarray]:
    if isinstance(M, HankelMatrix):
        return M.field, M.to_array()
    if isinstance(M, ReducedForm):
        return M.field, M.render()
    if F is None:
        raise TypeError("dense matrix input needs the field")
    A = np.asarray(M, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("square matrix expected")
    return F, A


def _form_values(F: Field, A: np.ndarray, last_fixed: bool) -> np.ndarray:
    """Values of ``v^T A v`` over all v (last coordinate pinned to 1 if asked)."""
    n = A.shape[0]
    free = n - 1 if last_fixed else n
    q = F.q
    idx = np.arange(q**free, dtype=np.int64)
    cols = [(idx // q**j) % q for j in range(free)]
    if last_fixed:
        cols.append(np.ones_like(idx))
    add, mul = F.add_table, F.mul_table
    acc = np.zeros(len(idx), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            a = int(A[i, j])
            if a:
                acc = add[acc, mul[a, mul[cols[i], cols[j]]]]
    return acc


def _counts(F: Field, values: np.ndarray) -> MultisetFq:
    return MultisetFq(F, tuple(np.bincount(values, minlength=F.q).tolist()))


def values_quadform(M, mode: str = "monic", F: Field | None = None) -> MultisetFq:
    """Multiset of ``v^T M v``.

    ``full``: v over F_q^n.  ``monic``: v over F_q^(n-1) x {1}.
    ``last1``: union of the monic multisets of the leading blocks M[i; i], which
    is the same as all v whose last non-zero entry is 1.
    """
    F, A = _dense(M, F)
    n = A.shape[0]
    if mode == "full":
        return _counts(F, _form_values(F, A, False))
    if n == 0:
        raise ValueError("monic values need n >= 1")
    if mode == "monic":
        return _counts(F, _form_values(F, A, True))
    if mode == "last1":
        out = MultisetFq.empty(F)
        for i in range(1, n + 1):
            out = out | _counts(F, _form_values(F, A[:i, :i], True))
        return out
    raise ValueError(f"unknown mode {mode!r}")


def values_last_nonzero_one(M, F: Field | None = None) -> MultisetFq:
    """Direct scan of every v whose last non-zero entry equals 1."""
    F, A = _dense(M, F)
    full = _form_values(F, A, False)
    n = A.shape[0]
    q = F.q
    keep = []
    for k in range(q**n):
        digits = [(k // q**j) % q for j in range(n)]
        nz = [d for d in digits if d]
        if nz and nz[-1] == 1:
            keep.append(full[k])
    return _counts(F, np.array(keep, dtype=np.int64))


# --- closed forms -----------------------------------------------------------

def values_closed_triangular(F: Field, l: int, lam, mode: str = "full") -> MultisetFq:
    """Values of a size-l skew-triangular Hankel block with skew-diagonal ``lam``.

    The result depends only on ``l`` and ``lam``, never on the entries below
    the skew-diagonal.
    """
    lam = F.index_of(lam)
    if lam == 0:
        raise ValueError("lambda must be non-zero")
    if l < 1:
        raise ValueError("block size must be >= 1")
    T = products(F)
    if mode == "full":
        if l % 2 == 0:
            return ms_nfold(T, l // 2)
        return ms_nfold(T, (l - 1) // 2) + scaled_squares(F, lam)
    if mode == "monic":
        if l == 1:
            return singleton(F, lam)
        if l % 2 == 0:
            return uniform(F) + ms_nfold(T, (l - 2) // 2)
        return uniform(F) + ms_nfold(T, (l - 3) // 2) + scaled_squares(F, lam)
    raise ValueError(f"unknown mode {mode!r}")


def _closed_from_form(R: ReducedForm, mode: str) -> MultisetFq:
    F = R.field
    P = R.partition
    odd = [b.lam for b in R.blocks if b.size % 2]
    T = products(F)
    out = ms_nfold(T, (P.rho_s - len(odd)) // 2)
    for lam in odd:
        out = out + scaled_squares(F, lam)
    z = P.p1_dblprime
    fin = R.final
    if mode == "full":
        out = out + zeros(F, F.q**z)
        if fin:
            out = out + values_closed_triangular(F, fin.size, fin.lam, "full")
        return out
    if fin is None:
        return out + zeros(F, F.q**(z - 1))
    return out + zeros(F, F.q**z) + values_closed_triangular(F, fin.size, fin.lam, "monic")


def values_closed_hankel(H: HankelMatrix, mode: str = "monic") -> MultisetFq:
    """Value multiset of H predicted from its reduced form alone."""
    if mode == "last1":
        out = MultisetFq.empty(H.field)
        for i in range(1, H.rows + 1):
            out = out | _closed_from_form(reduce(H.leading(i)), "monic")
        return out
    if mode not in ("full", "monic"):
        raise ValueError(f"unknown mode {mode!r}")
    return _closed_from_form(reduce(H), mode)
