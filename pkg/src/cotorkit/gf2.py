"""Linear algebra over GF(2) with rows packed into Python integers.

Column ``j`` of a row lives in bit ``j`` of the integer, so the leftmost
column is the least significant bit. Elimination always pivots on the
leftmost available column, which keeps every basis reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class BitVector:
    """A vector of ``len`` entries in GF(2); entry ``j`` is bit ``j`` of ``bits``."""

    len: int
    bits: int = 0

    def __post_init__(self):
        if self.len < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError("bits do not fit in the declared length")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for j, e in enumerate(entries):
            if e & 1:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def from_str(cls, s: str) -> "BitVector":
        """Parse a string such as ``"110"`` (first character is entry 0)."""
        return cls.from_list([int(ch) for ch in s])

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.len)]

    def __str__(self) -> str:
        return "".join(str(e) for e in self.to_list())

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.len:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.len != self.len:
            raise ValueError("length mismatch")
        return BitVector(self.len, self.bits ^ other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """A ``rows`` x ``cols`` matrix over GF(2), stored as one packed integer per row."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.rows:
            raise ValueError("row count does not match the stored rows")
        for r in self.bits:
            if r < 0 or r >> self.cols:
                raise ValueError("row does not fit in the declared column count")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str], cols: int | None = None) -> "BitMatrix":
        vecs = [BitVector.from_str(r) if isinstance(r, str) else BitVector.from_list(r) for r in rows]
        if cols is None:
            cols = vecs[0].len if vecs else 0
        if any(v.len != cols for v in vecs):
            raise ValueError("ragged rows")
        return cls(len(vecs), cols, tuple(v.bits for v in vecs))

    @classmethod
    def from_packed(cls, rows: Iterable[int], cols: int) -> "BitMatrix":
        rows = tuple(rows)
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        """Build the matrix whose ``j``-th column is the packed integer ``columns[j]``."""
        out = [0] * rows
        for j, c in enumerate(columns):
            while c:
                i = _low_bit(c)
                out[i] |= 1 << j
                c &= c - 1
        return cls(rows, len(columns), tuple(out))

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.bits[i])

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_columns(self.bits, self.cols)

    def apply(self, v: BitVector) -> BitVector:
        """Return ``m * v``."""
        if v.len != self.cols:
            raise ValueError("length mismatch")
        out = 0
        for i, r in enumerate(self.bits):
            if (r & v.bits).bit_count() & 1:
                out |= 1 << i
        return BitVector(self.rows, out)

    def to_lists(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.rows)]


class Echelon:
    """An incrementally grown row-echelon basis keyed by leftmost pivot.

    Reduction is deterministic: a vector is always reduced against the
    stored rows in order of their pivot column.
    """

    __slots__ = ("pivots",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def add(self, v: int) -> bool:
        """Insert ``v``; return True when it was independent of the stored rows."""
        v = self._head_reduce(v)
        if not v:
            return False
        self.pivots[_low_bit(v)] = v
        return True

    def _head_reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            row = pivots.get(_low_bit(v))
            if row is None:
                return v
            v ^= row
        return 0

    def contains(self, v: int) -> bool:
        return self._head_reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _rref(rows: Sequence[int]) -> list[int]:
    """Fully reduced row echelon form, rows sorted by pivot column."""
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            p = _low_bit(v)
            row = pivots.get(p)
            if row is None:
                break
            v ^= row
        if v:
            pivots[_low_bit(v)] = v
    # back-substitute so that every pivot column is clear elsewhere; a row
    # with pivot q has no bits below q, so earlier clearings stay intact
    order = sorted(pivots)
    for p in order:
        v = pivots[p]
        for q in order:
            if q != p and (pivots[q] >> p) & 1:
                pivots[q] ^= v
    return [pivots[p] for p in order]


def rank(m: BitMatrix) -> int:
    """Rank of ``m`` over GF(2)."""
    return Echelon(m.bits).rank


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of ``{v : m v = 0}``, one vector per free column, ordered by that column."""
    reduced = _rref(m.bits)
    pivot_cols = [_low_bit(r) for r in reduced]
    pivot_set = set(pivot_cols)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, r in zip(pivot_cols, reduced):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(BitVector(m.cols, v))
    return basis


def image_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the row space of ``m`` in reduced echelon form."""
    return [BitVector(m.cols, r) for r in _rref(m.bits)]


def member(span: Sequence[BitVector], v: BitVector) -> bool:
    """True when ``v`` lies in the GF(2) span of ``span``."""
    for w in span:
        if w.len != v.len:
            raise ValueError("length mismatch")
    return Echelon(w.bits for w in span).contains(v.bits)


def quotient_dim(ambient_dim: int, span: Sequence[BitVector]) -> int:
    """Dimension of the quotient of ``GF(2)^ambient_dim`` by the span."""
    for w in span:
        if w.len != ambient_dim:
            raise ValueError("length mismatch")
    return ambient_dim - Echelon(w.bits for w in span).rank


def solve(m: BitMatrix, target: BitVector) -> BitVector | None:
    """One solution ``v`` of ``m v = target``, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    if target.len != m.rows:
        raise ValueError("length mismatch")
    # augment each row with the target entry in column ``cols``
    aug = [r | (((target.bits >> i) & 1) << m.cols) for i, r in enumerate(m.bits)]
    reduced = _rref(aug)
    v = 0
    for r in reduced:
        p = _low_bit(r)
        if p == m.cols:
            return None
        if (r >> m.cols) & 1:
            v |= 1 << p
    return BitVector(m.cols, v)
