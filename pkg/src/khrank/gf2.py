"""GF(2) matrices as Python-int bitsets, one integer per row (bit j = column j)."""
from __future__ import annotations

from typing import Iterable, List


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of the span of the given row bitsets."""
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = pivots.get(top)
            if pivot is None:
                pivots[top] = row
                rank += 1
                break
            row ^= pivot
    return rank


class BitMatrix:
    """A dense GF(2) matrix; rows are ints, so XOR is row addition."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: List[int] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [0] * nrows
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        for r in rows:
            if r & ~mask:
                raise ValueError("row has bits beyond the column count")
        self.rows = list(rows)

    @classmethod
    def from_entries(cls, entries: Iterable[Iterable[int]]) -> "BitMatrix":
        rows = []
        ncols = 0
        for entry_row in entries:
            bits = list(entry_row)
            ncols = max(ncols, len(bits))
            acc = 0
            for j, v in enumerate(bits):
                if v & 1:
                    acc |= 1 << j
            rows.append(acc)
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def set(self, i: int, j: int) -> None:
        self.rows[i] |= 1 << j

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("matrix size mismatch")
        return BitMatrix(self.nrows, self.ncols,
                         [a ^ b for a, b in zip(self.rows, other.rows)])

    def __mul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("matrix size mismatch")
        out = []
        for row in self.rows:
            acc = 0
            r = row
            while r:
                j = r & -r
                acc ^= other.rows[j.bit_length() - 1]
                r ^= j
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, out)

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, row in enumerate(self.rows):
            r = row
            while r:
                j = r & -r
                cols[j.bit_length() - 1] |= 1 << i
                r ^= j
        return BitMatrix(self.ncols, self.nrows, cols)

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"
