"""Square Hankel matrices over F_q and their reduced (rho, pi)-forms.

A Hankel matrix is stored by its defining sequence ``beta_0 .. beta_{l+m-2}``
(entry ``(i, j)``, 1-based, is ``beta_{i+j-2}``).  Dense renderings are numpy
arrays of element indices; the small eliminations below run on Python lists
with the field's lookup tables.

Reduction follows the recursive congruence: for the strict characteristic
``(rho, pi)`` with ``rho >= 1``, solve ``H[rho; rho] x = (alpha_rho, ...,
alpha_{2 rho - 1})``, clear rows ``n .. rho+1`` (in that order) with the
recurrence ``x``, apply the same operations to columns, and recurse on the
invertible leading block.  Every operation is recorded, so the returned
certificate ``P`` satisfies ``P H P^T == render(reduce(H))``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .field import Field, FieldMismatch


class LengthMismatch(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class InvalidPartition(ValueError):
    pass


class ReductionError(AssertionError):
    """The elimination did not produce the expected block shape."""


# --- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class HankelMatrix:
    field: Field
    rows: int
    cols: int
    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(s) for s in self.seq))
        if self.rows < 0 or self.cols < 0:
            raise OutOfRange("negative dimension")
        need = max(self.rows + self.cols - 1, 0)
        if len(self.seq) != need:
            raise LengthMismatch(
                f"{self.rows}x{self.cols} Hankel matrix needs {need} entries, got {len(self.seq)}")
        q = self.field.q
        if any(not 0 <= s < q for s in self.seq):
            raise ValueError(f"sequence entry out of range for {self.field}")

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> int:
        """1-based entry ``beta_{i+j-2}``."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise OutOfRange(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self.seq[i + j - 2]

    def to_list(self) -> list[list[int]]:
        s = self.seq
        return [[s[i + j] for j in range(self.cols)] for i in range(self.rows)]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=np.int64).reshape(self.rows, self.cols)

    def leading(self, l: int, m: int | None = None) -> HankelMatrix:
        """Top-left ``l x m`` block, itself a Hankel matrix."""
        m = l if m is None else m
        if not (0 <= l <= self.rows and 0 <= m <= self.cols):
            raise OutOfRange(f"leading {l}x{m} of {self.rows}x{self.cols}")
        return HankelMatrix(self.field, l, m, self.seq[:max(l + m - 1, 0)])

    def scaled(self, c: int) -> HankelMatrix:
        mul = self.field.lists.mul
        return HankelMatrix(self.field, self.rows, self.cols, tuple(mul[c][s] for s in self.seq))


def hankel_from_seq(F: Field, seq, l: int, m: int) -> HankelMatrix:
    return HankelMatrix(F, l, m, tuple(F.index_of(s) for s in seq))


def hankel_square(F: Field, alpha, size: int) -> HankelMatrix:
    """``H_{size,size}(alpha)``: the leading square matrix on a longer sequence."""
    alpha = tuple(F.index_of(a) for a in alpha)
    if len(alpha) < 2 * size - 1:
        raise LengthMismatch(f"need {2 * size - 1} terms, got {len(alpha)}")
    return HankelMatrix(F, size, size, alpha[:max(2 * size - 1, 0)])


def submatrix(M, l1: int, l2: int = 0, m1: int = 0, m2: int = 0):
    """``M[l1, -l2; m1, -m2]``: first l1 and last l2 rows, first m1 and last m2 columns.

    A Hankel input with ``l2 == m2 == 0`` returns a :class:`HankelMatrix`;
    everything else is returned as a dense array.
    """
    if isinstance(M, HankelMatrix):
        rows, cols = M.rows, M.cols
        if l1 + l2 > rows or m1 + m2 > cols or min(l1, l2, m1, m2) < 0:
            raise OutOfRange(f"[{l1},-{l2};{m1},-{m2}] of {rows}x{cols}")
        if l2 == 0 and m2 == 0:
            return M.leading(l1, m1)
        A = M.to_array()
    else:
        A = np.asarray(M)
        rows, cols = A.shape
        if l1 + l2 > rows or m1 + m2 > cols or min(l1, l2, m1, m2) < 0:
            raise OutOfRange(f"[{l1},-{l2};{m1},-{m2}] of {rows}x{cols}")
    r = list(range(l1)) + list(range(rows - l2, rows))
    c = list(range(m1)) + list(range(cols - m2, cols))
    return A[np.ix_(r, c)]


def _as_list(M) -> list[list[int]]:
    if isinstance(M, HankelMatrix):
        return M.to_list()
    if isinstance(M, ReducedForm):
        return M.render().tolist()
    return np.asarray(M, dtype=np.int64).tolist()


# --- exact linear algebra ---------------------------------------------------

def _rank(F: Field, A: list[list[int]]) -> int:
    t = F.lists
    A = [row[:] for row in A]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = t.inv[A[r][c]]
        pr = [t.mul[inv][v] for v in A[r]]
        A[r] = pr
        for i in range(r + 1, nrows):
            f = A[i][c]
            if f:
                mf = t.mul[f]
                sub = t.sub
                A[i] = [sub[a][mf[b]] for a, b in zip(A[i], pr)]
        r += 1
        if r == nrows:
            break
    return r


def rank(M, F: Field | None = None) -> int:
    """Rank over F_q by exact Gaussian elimination."""
    if F is None:
        if not isinstance(M, (HankelMatrix, ReducedForm)):
            raise TypeError("dense input needs the field")
        F = M.field
    return _rank(F, _as_list(M))


def _solve(F: Field, A: list[list[int]], b: list[int]) -> list[int]:
    """Unique solution of ``A x = b`` for invertible square ``A``."""
    t = F.lists
    n = len(A)
    aug = [row[:] + [bi] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ReductionError("leading block is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = t.inv[aug[c][c]]
        aug[c] = [t.mul[inv][v] for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                mf = t.mul[aug[i][c]]
                aug[i] = [t.sub[a][mf[v]] for a, v in zip(aug[i], aug[c])]
    return [row[n] for row in aug]


def _matmul(F: Field, A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    t = F.lists
    Bt = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = t.add[acc][t.mul[a][b]]
            new.append(acc)
        out.append(new)
    return out


def _transpose(A):
    return [list(r) for r in zip(*A)]


def congruence(F: Field, P, M) -> np.ndarray:
    """``P M P^T`` over F_q."""
    P = _as_list(P)
    M = _as_list(M)
    return np.array(_matmul(F, _matmul(F, P, M), _transpose(P)), dtype=np.int64)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def strict_rho_pi(H: HankelMatrix) -> tuple[int, int]:
    """``(rho_s, pi_s)``: rho_s is the largest r < n with H[r; r] invertible (else 0)."""
    if not H.is_square:
        raise ValueError("strict (rho, pi)-characteristic needs a square matrix")
    F = H.field
    n = H.rows
    A = H.to_list()
    rho = 0
    for r in range(n - 1, 0, -1):
        if _rank(F, [row[:r] for row in A[:r]]) == r:
            rho = r
            break
    return rho, _rank(F, A) - rho


# --- reduced forms ----------------------------------------------------------

@dataclass(frozen=True)
class TriangularBlock:
    """Non-strict lower skew-triangular Hankel block.

    Zero above the main skew-diagonal, ``lam`` on it and ``belly`` =
    ``(beta_2, ..., beta_l)`` on the skew-diagonals below.
    """

    field: Field
    size: int
    lam: int
    belly: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "belly", tuple(int(b) for b in self.belly))
        if self.size < 1:
            raise ValueError("triangular block size must be >= 1")
        if self.lam == 0:
            raise ValueError("triangular block needs a nonzero skew-diagonal")
        if len(self.belly) != self.size - 1:
            raise ValueError(f"belly of a size-{self.size} block has {self.size - 1} entries")

    @property
    def seq(self) -> tuple[int, ...]:
        return (0,) * (self.size - 1) + (self.lam,) + self.belly

    def as_hankel(self) -> HankelMatrix:
        return HankelMatrix(self.field, self.size, self.size, self.seq)

    def render(self) -> np.ndarray:
        return self.as_hankel().to_array()


@dataclass(frozen=True)
class RhoPiPartition:
    """Block sizes ``(p1', p1'', p2, ..., pt)`` of a reduced form."""

    p1_prime: int
    p1_dblprime: int
    tail: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(int(x) for x in self.tail))
        if self.p1_prime < 0 or self.p1_dblprime < 0:
            raise InvalidPartition("p1' and p1'' must be >= 0")
        if self.p1_prime + self.p1_dblprime < 1:
            raise InvalidPartition("at least one of p1', p1'' must be positive")
        if any(p < 1 for p in self.tail):
            raise InvalidPartition("tail blocks must have size >= 1")

    @property
    def n(self) -> int:
        return self.p1_prime + self.p1_dblprime + sum(self.tail)

    @property
    def rho_s(self) -> int:
        return sum(self.tail)

    @property
    def pi_s(self) -> int:
        return self.p1_prime

    @property
    def rank(self) -> int:
        return self.p1_prime + sum(self.tail)

    @property
    def t(self) -> int:
        """Index of the last block: the tail is ``p2 .. pt``."""
        return 1 + len(self.tail)

    @property
    def triangular_blocks(self) -> int:
        """Number of non-empty skew-triangular blocks (H1' counts iff p1' >= 1)."""
        return len(self.tail) + (1 if self.p1_prime else 0)

    def as_tuple(self) -> tuple[int, ...]:
        return (self.p1_prime, self.p1_dblprime) + self.tail


@dataclass(frozen=True)
class ReducedForm:
    """Block-diagonal normal form ``diag(H_t, ..., H_2, H1'', H1')``.

    ``blocks`` lists ``H_t .. H_2`` top to bottom; ``final`` is ``H1'`` or
    ``None`` when it is empty.
    """

    field: Field
    blocks: tuple[TriangularBlock, ...]
    zero_size: int
    final: TriangularBlock | None

    def __post_init__(self):
        if self.zero_size < 0:
            raise ValueError("zero block size must be >= 0")
        if self.zero_size == 0 and self.final is None:
            raise ValueError("H1' and H1'' cannot both be empty")
        for b in self.blocks + ((self.final,) if self.final else ()):
            if b.field != self.field:
                raise FieldMismatch("block in a different field")

    @property
    def size(self) -> int:
        return sum(b.size for b in self.blocks) + self.zero_size + (
            self.final.size if self.final else 0)

    @property
    def partition(self) -> RhoPiPartition:
        return RhoPiPartition(
            self.final.size if self.final else 0,
            self.zero_size,
            tuple(b.size for b in reversed(self.blocks)))

    def render(self) -> np.ndarray:
        n = self.size
        out = np.zeros((n, n), dtype=np.int64)
        o = 0
        for b in self.blocks:
            out[o:o + b.size, o:o + b.size] = b.render()
            o += b.size
        o += self.zero_size
        if self.final:
            out[o:, o:] = self.final.render()
        return out


def _parse_tail_block(F: Field, D: list[list[int]]) -> tuple[int, TriangularBlock | None]:
    """Read ``diag(0, H1')`` off the cleared lower-right block ``D``."""
    s = len(D)
    seq = [D[0][j] for j in range(s)] + [D[i][s - 1] for i in range(1, s)]
    for i in range(s):
        for j in range(s):
            if D[i][j] != seq[i + j]:
                raise ReductionError("cleared block is not Hankel")
    f = next((i for i, v in enumerate(seq) if v), None)
    if f is None:
        return s, None
    if f < s - 1:
        raise ReductionError("cleared block is not lower skew-triangular")
    pi = 2 * s - 1 - f
    return s - pi, TriangularBlock(F, pi, seq[f], tuple(seq[f + 1:]))


@dataclass(frozen=True)
class Stage1Form:
    """First elimination stage ``diag(H[rho; rho], H1'', H1')``.

    For ``rho == 0`` this is ``H`` itself (read as ``diag(H1'', H1')``) with an
    identity ``ops`` matrix.
    """

    field: Field
    rho: int
    pi: int
    leading: HankelMatrix | None
    zero_size: int
    final: TriangularBlock | None
    x: tuple[int, ...]
    ops: np.ndarray

    def render(self) -> np.ndarray:
        n = self.rho + self.zero_size + (self.final.size if self.final else 0)
        out = np.zeros((n, n), dtype=np.int64)
        if self.leading is not None:
            out[:self.rho, :self.rho] = self.leading.to_array()
        if self.final:
            k = self.final.size
            out[n - k:, n - k:] = self.final.render()
        return out


def stage1_reduce(H: HankelMatrix) -> Stage1Form:
    if not H.is_square:
        raise ValueError("reduction needs a square matrix")
    F = H.field
    n = H.rows
    rho, pi = strict_rho_pi(H)
    A = H.to_list()
    if rho == 0:
        zero, final = _parse_tail_block(F, A)
        if (final.size if final else 0) != pi:
            raise ReductionError("rho_s = 0 matrix does not have the skew-triangular shape")
        return Stage1Form(F, 0, pi, None, zero, final, (), np.array(_identity(n), dtype=np.int64))
    alpha = H.seq
    lead = [row[:rho] for row in A[:rho]]
    x = _solve(F, lead, list(alpha[rho:2 * rho]))
    L = _identity(n)
    neg = F.lists.neg
    for i in range(n - 1, rho - 1, -1):
        for j, xj in enumerate(x):
            L[i][i - rho + j] = neg[xj]
    R = _matmul(F, _matmul(F, L, A), _transpose(L))
    for i in range(n):
        for j in range(n):
            if (i < rho) != (j < rho) and R[i][j]:
                raise ReductionError("off-diagonal block not cleared")
            if i < rho and j < rho and R[i][j] != A[i][j]:
                raise ReductionError("leading block changed")
    zero, final = _parse_tail_block(F, [row[rho:] for row in R[rho:]])
    if (final.size if final else 0) != pi:
        raise ReductionError(f"H1' has size {final.size if final else 0}, expected pi_s = {pi}")
    return Stage1Form(F, rho, pi, H.leading(rho), zero, final, tuple(x),
                      np.array(L, dtype=np.int64))


def reduce_with_certificate(H: HankelMatrix) -> tuple[ReducedForm, np.ndarray]:
    """Reduced form and the operation matrix ``P`` with ``P H P^T = render(red(H))``."""
    F = H.field
    st = stage1_reduce(H)
    if st.rho == 0:
        return ReducedForm(F, (), st.zero_size, st.final), st.ops
    lead, lead_ops = reduce_with_certificate(st.leading)
    if lead.zero_size or lead.final is None:
        raise ReductionError("invertible leading block reduced with a zero block")
    n = H.rows
    big = _identity(n)
    for i in range(st.rho):
        big[i][:st.rho] = [int(v) for v in lead_ops[i]]
    P = _matmul(F, big, st.ops.tolist())
    form = ReducedForm(F, lead.blocks + (lead.final,), st.zero_size, st.final)
    return form, np.array(P, dtype=np.int64)


def reduce(H: HankelMatrix) -> ReducedForm:
    return reduce_with_certificate(H)[0]


def partition(H: HankelMatrix) -> RhoPiPartition:
    return reduce(H).partition


# --- enumeration and counting ----------------------------------------------

def enumerate_hankel(F: Field, n: int, h: int = 0, r: int | None = None) -> Iterator[HankelMatrix]:
    """Every n x n Hankel matrix with ``beta_0 = ... = beta_{h-1} = 0``.

    Optionally keeps only rank ``r``.  Unfiltered count is ``q^(2n-1-h)``.
    """
    length = 2 * n - 1
    if not 0 <= h <= length:
        raise OutOfRange(f"need 0 <= h <= {length}")
    for free in itertools.product(range(F.q), repeat=length - h):
        H = HankelMatrix(F, n, n, (0,) * h + free[::-1])
        if r is None or rank(H) == r:
            yield H


def all_partitions(n: int) -> Iterator[RhoPiPartition]:
    """Every formal (rho, pi)-partition of size n."""
    def compositions(total):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first,) + rest

    for rho in range(n):
        for tail in compositions(rho):
            for p1 in range(n - rho + 1):
                yield RhoPiPartition(p1, n - rho - p1, tail)


def enumerate_reduced(F: Field, P: RhoPiPartition) -> Iterator[ReducedForm]:
    """Every reduced matrix with partition ``P``."""
    def blocks_of(size):
        for lam in F.nonzero:
            for belly in itertools.product(range(F.q), repeat=size - 1):
                yield TriangularBlock(F, size, lam, belly)

    sizes = list(reversed(P.tail))
    tails = [list(blocks_of(s)) for s in sizes]
    finals = list(blocks_of(P.p1_prime)) if P.p1_prime else [None]
    for combo in itertools.product(*tails):
        for fin in finals:
            yield ReducedForm(F, tuple(combo), P.p1_dblprime, fin)


@lru_cache(maxsize=32)
def reduction_fibers(F: Field, n: int) -> dict[ReducedForm, int]:
    """``|{H : red(H) = M}|`` for every M in the image of reduce on n x n matrices."""
    return dict(Counter(reduce(H) for H in enumerate_hankel(F, n)))


def count_reduced_with_partition(P: RhoPiPartition, F: Field, mode: str = "closed") -> int:
    """Number of n x n reduced matrices with partition ``P``.

    ``closed`` is ``(q-1)^t q^(r-t)`` with t the number of non-empty
    skew-triangular blocks; ``enumerate`` counts distinct ``reduce(H)`` over all
    Hankel ``H`` with that partition.
    """
    if not isinstance(P, RhoPiPartition):
        raise InvalidPartition(f"expected RhoPiPartition, got {P!r}")
    if mode == "closed":
        t = P.triangular_blocks
        return (F.q - 1) ** t * F.q ** (P.rank - t)
    if mode == "enumerate":
        return sum(1 for M in reduction_fibers(F, P.n) if M.partition == P)
    raise ValueError(f"unknown mode {mode!r}")


def count_hankel_with_reduced(M: ReducedForm, F: Field, mode: str = "closed") -> int:
    """``|{H : red(H) = M}|``: ``q^(t-1)`` in closed mode, scanned in enumerate mode."""
    if M.field != F:
        raise FieldMismatch(f"{M.field} vs {F}")
    if mode == "closed":
        return F.q ** (M.partition.t - 1)
    if mode == "enumerate":
        return reduction_fibers(F, M.size).get(M, 0)
    raise ValueError(f"unknown mode {mode!r}")
