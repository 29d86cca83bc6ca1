"""
GF(2) Linear Algebra Tool

Bit-packed dense matrices over GF(2). Rows are stored as little-endian
uint64 words (bit c of a row lives in word c // 64), and elimination always
runs on a copy, so a BitMatrix never changes after construction.
"""

from typing import Iterable, List, Sequence, Tuple

import numpy as np
import numpy.typing as npt

BASE = 64

# Dense 0/1 vector of length `cols`.
BitVector = npt.NDArray[np.uint8]


def _pack(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    padded_cols = max(1, (cols + BASE - 1) // BASE) * BASE
    padded = np.zeros((rows, padded_cols), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    return np.ascontiguousarray(np.packbits(padded, axis=1, bitorder="little")).view("<u8")


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols]


def _column_bits(words: np.ndarray, col: int) -> np.ndarray:
    word, bit = divmod(col, BASE)
    return ((words[:, word] >> np.uint64(bit)) & np.uint64(1)).astype(bool)


def _echelon(words: np.ndarray, cols: int) -> Tuple[np.ndarray, List[int]]:
    """Gauss-Jordan elimination on a copy; returns the nonzero RREF rows and pivot columns."""
    a = words.copy()
    nrows = a.shape[0]
    pivot_row = 0
    pivots: List[int] = []
    for col in range(cols):
        if pivot_row == nrows:
            break
        hits = np.flatnonzero(_column_bits(a[pivot_row:], col))
        if hits.size == 0:
            continue
        found = pivot_row + int(hits[0])
        if found != pivot_row:
            a[[pivot_row, found]] = a[[found, pivot_row]]
        mask = _column_bits(a, col)
        mask[pivot_row] = False
        a[mask] ^= a[pivot_row]
        pivots.append(col)
        pivot_row += 1
    return a[:pivot_row], pivots


class BitMatrix:
    """
    Immutable rows x cols matrix over GF(2).

    Build one with `from_dense` (any integer array, reduced mod 2) or
    `from_supports` (per-row column indices, repeated indices cancel).
    """

    __slots__ = ("rows", "cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self._words = words
        self._words.setflags(write=False)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls.from_dense(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls.from_dense(np.eye(size, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense: npt.ArrayLike) -> "BitMatrix":
        array = np.asarray(dense)
        if array.ndim == 1:
            array = array.reshape(1, -1)
        if array.ndim != 2:
            raise ValueError("expected a 2-D array")
        rows, cols = array.shape
        return cls(rows, cols, _pack(array.astype(np.uint8)))

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], cols: int) -> "BitMatrix":
        """Rows given as column-index lists; an index appearing twice cancels (mod 2)."""
        support_rows = [list(s) for s in supports]
        dense = np.zeros((len(support_rows), cols), dtype=np.uint8)
        for r, support in enumerate(support_rows):
            for c in support:
                if not 0 <= c < cols:
                    raise IndexError(f"column {c} out of range for {cols} columns")
                dense[r, c] ^= 1
        return cls.from_dense(dense)

    def get(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(f"entry ({row}, {col}) outside {self.rows}x{self.cols} matrix")
        word, bit = divmod(col, BASE)
        return int((int(self._words[row, word]) >> bit) & 1)

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return _unpack(self._words, self.cols)

    def row(self, index: int) -> BitVector:
        if not 0 <= index < self.rows:
            raise IndexError(f"row {index} out of range")
        return self.to_dense()[index].copy()

    def row_supports(self) -> List[List[int]]:
        """Sorted column indices of each row."""
        return [np.flatnonzero(r).tolist() for r in self.to_dense()]

    def row_ints(self) -> List[int]:
        """Each row as a Python int bitset (bit c = column c)."""
        return [sum(1 << c for c in support) for support in self.row_supports()]

    def column_ints(self) -> List[int]:
        """Each column as a Python int bitset over the rows."""
        return self.transpose().row_ints()

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError(f"cannot stack {other.cols} columns under {self.cols}")
        return BitMatrix.from_dense(np.vstack([self.to_dense(), other.to_dense()]))

    def is_zero(self) -> bool:
        return not bool(np.any(self._words))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(
            np.array_equal(self._words, other._words)
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, rank={rank(self)})"

    def echelon(self) -> Tuple["BitMatrix", List[int]]:
        """Reduced row echelon form (nonzero rows only) and its pivot columns."""
        reduced, pivots = _echelon(self._words, self.cols)
        return BitMatrix(len(pivots), self.cols, reduced), pivots


def rank(m: BitMatrix) -> int:
    """Rank over GF(2); the input is left untouched."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_echelon(m._words, m.cols)[1])


def right_kernel_basis(m: BitMatrix) -> List[BitVector]:
    """Basis of {x : m x = 0}, one vector per free column of the RREF."""
    if m.rows == 0:
        return [np.eye(m.cols, dtype=np.uint8)[i] for i in range(m.cols)]
    reduced, pivots = m.echelon()
    dense = reduced.to_dense()
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        x = np.zeros(m.cols, dtype=np.uint8)
        x[free] = 1
        for r, p in enumerate(pivots):
            x[p] = dense[r, free]
        basis.append(x)
    return basis


def left_kernel_dim(m: BitMatrix) -> int:
    """Dimension of the row dependencies of m: rows minus rank."""
    return m.rows - rank(m)


def in_row_space(m: BitMatrix, v: Sequence[int]) -> bool:
    """True iff v is a GF(2) combination of the rows of m (rank augmentation)."""
    vector = np.asarray(v, dtype=np.uint8).reshape(-1)
    if vector.size != m.cols:
        raise ValueError(f"vector length {vector.size} does not match {m.cols} columns")
    if not vector.any():
        return True
    return rank(m.stack(BitMatrix.from_dense(vector))) == rank(m)


def mul_mod2(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """
    Matrix product over GF(2).

    Args:
        a: Left factor, r x n
        b: Right factor, n x c

    Returns:
        The r x c product reduced mod 2
    """
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    product = a.to_dense().astype(np.int64) @ b.to_dense().astype(np.int64)
    return BitMatrix.from_dense(product % 2)


class RowSpace:
    """
    Incremental GF(2) span of int bitsets, keyed by leading bit.

    Membership reduces a candidate against the stored pivots, which is
    rank augmentation without rebuilding the matrix.
    """

    def __init__(self, rows: Iterable[int] = ()):
        self._pivots: dict = {}
        for r in rows:
            self.add(r)

    @classmethod
    def of(cls, m: BitMatrix) -> "RowSpace":
        return cls(m.row_ints())

    def reduce(self, v: int) -> int:
        while v:
            pivot = self._pivots.get(v.bit_length() - 1)
            if pivot is None:
                return v
            v ^= pivot
        return 0

    def add(self, v: int) -> bool:
        """Insert v; returns False when it was already in the span."""
        residue = self.reduce(v)
        if not residue:
            return False
        self._pivots[residue.bit_length() - 1] = residue
        return True

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0
