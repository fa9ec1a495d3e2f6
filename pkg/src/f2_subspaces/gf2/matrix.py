"""Dense bit-packed matrices over the two-element field and Gaussian elimination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .vector import (
    WORD_BITS,
    GF2Vector,
    check_same_length,
    pack_bits,
    parity,
    unpack_bits,
    vectors_to_words,
    word_count,
)

# Row batches larger than this are mapped through a matrix in chunks.
_MAP_CHUNK = 1 << 15


def row_reduce(
    data: np.ndarray, cols: int, reduced: bool = True
) -> tuple[np.ndarray, list[int]]:
    """Gaussian elimination on packed rows.

    Returns the nonzero rows of the (reduced) row-echelon form and their pivot columns.
    The input array is not modified.
    """

    work = np.array(data, dtype=np.uint64, copy=True)
    if work.ndim == 1:
        work = work.reshape(1, word_count(cols))
    nrows = work.shape[0]
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        if rank == nrows:
            break
        word, bit = divmod(col, WORD_BITS)
        mask = np.uint64(1) << np.uint64(bit)
        hits = np.flatnonzero(work[rank:, word] & mask)
        if hits.size == 0:
            continue
        pivot_row = rank + int(hits[0])
        if pivot_row != rank:
            work[[rank, pivot_row]] = work[[pivot_row, rank]]
        targets = (work[:, word] & mask) != 0
        targets[rank] = False
        if not reduced:
            targets[:rank] = False
        if targets.any():
            work[targets] ^= work[rank]
        pivots.append(col)
        rank += 1
    return work[:rank].copy(), pivots


def combine_rows(coefficients: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Return ``coefficients @ rows`` over F2.

    ``coefficients`` is a ``(k, d)`` 0/1 array, ``rows`` a ``(d, words)`` packed array.
    """

    coefficients = np.asarray(coefficients, dtype=np.uint8)
    out = np.zeros((coefficients.shape[0], rows.shape[1]), dtype=np.uint64)
    for index in range(rows.shape[0]):
        selected = coefficients[:, index].astype(bool)
        if selected.any():
            out[selected] ^= rows[index]
    return out


@dataclass(frozen=True, eq=False)
class GF2Matrix:
    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=np.uint64).reshape(self.rows, word_count(self.cols))
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols, np.zeros((rows, word_count(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls.from_bits(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_bits(cls, bits: np.ndarray) -> "GF2Matrix":
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError("Expected a two-dimensional 0/1 array")
        return cls(bits.shape[0], bits.shape[1], pack_bits(bits))

    @classmethod
    def from_rows(cls, vectors: Sequence[GF2Vector], cols: Optional[int] = None) -> "GF2Matrix":
        if cols is None:
            if not vectors:
                raise ValueError("Column count is required for an empty row list")
            cols = vectors[0].length
        return cls(len(vectors), cols, vectors_to_words(vectors, cols))

    @classmethod
    def from_strings(cls, rows: Sequence[str], cols: Optional[int] = None) -> "GF2Matrix":
        return cls.from_rows([GF2Vector.from_string(r) for r in rows], cols)

    def row(self, index: int) -> GF2Vector:
        return GF2Vector(self.cols, self.data[index])

    def row_vectors(self) -> list[GF2Vector]:
        return [self.row(i) for i in range(self.rows)]

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self.data, self.cols)

    def to_strings(self) -> list[str]:
        return [self.row(i).to_string() for i in range(self.rows)]

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix.from_bits(self.to_bits().T)

    @property
    def T(self) -> "GF2Matrix":
        return self.transpose()

    def rank(self) -> int:
        return len(row_reduce(self.data, self.cols, reduced=False)[1])

    def take(self, indices: Union[Sequence[int], np.ndarray]) -> "GF2Matrix":
        """Select rows by index or boolean mask."""

        selected = self.data[np.asarray(indices)] if len(indices) else self.data[:0]
        return GF2Matrix(selected.shape[0], self.cols, selected)

    def stack(self, other: "GF2Matrix") -> "GF2Matrix":
        check_same_length(self.cols, other.cols)
        return GF2Matrix(self.rows + other.rows, self.cols, np.vstack([self.data, other.data]))

    def map_rows(self, batch: "GF2Matrix") -> "GF2Matrix":
        """Apply this matrix to every row of ``batch`` (read as column vectors)."""

        check_same_length(self.cols, batch.cols)
        out_bits = np.zeros((batch.rows, self.rows), dtype=np.uint8)
        for start in range(0, batch.rows, _MAP_CHUNK):
            chunk = batch.data[start : start + _MAP_CHUNK]
            out_bits[start : start + chunk.shape[0]] = parity(
                chunk[:, None, :] & self.data[None, :, :]
            )
        return GF2Matrix(batch.rows, self.rows, pack_bits(out_bits))

    def __matmul__(self, other: Union["GF2Matrix", GF2Vector]) -> Union["GF2Matrix", GF2Vector]:
        if isinstance(other, GF2Vector):
            check_same_length(self.cols, other.length)
            return GF2Vector.from_bits(parity(self.data & other.words[None, :]))
        check_same_length(self.cols, other.rows)
        return GF2Matrix(self.rows, other.cols, combine_rows(self.to_bits(), other.data))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data.tobytes() == other.data.tobytes()
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"GF2Matrix({self.rows}x{self.cols}, {self.to_strings()!r})"


def rank(m: GF2Matrix) -> int:
    """Dimension of the row span of ``m``."""

    return m.rank()


def solve(m: GF2Matrix, b: GF2Vector) -> Optional[GF2Vector]:
    """Return some ``x`` with ``m @ x == b``, or None when the system is inconsistent.

    Free variables are set to zero.
    """

    check_same_length(m.rows, b.length)
    augmented_bits = np.hstack([m.to_bits(), b.to_bits()[:, None]])
    reduced, pivots = row_reduce(pack_bits(augmented_bits), m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    reduced_bits = unpack_bits(reduced, m.cols + 1)
    x = np.zeros(m.cols, dtype=np.uint8)
    for row, col in enumerate(pivots):
        x[col] = reduced_bits[row, m.cols]
    return GF2Vector.from_bits(x)


def random_matrix(rows: int, cols: int, rng: np.random.Generator) -> GF2Matrix:
    """Matrix with i.i.d. uniform entries."""

    return GF2Matrix.from_bits(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))
