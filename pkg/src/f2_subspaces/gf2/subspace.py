"""Linear subspaces of F2^n held in canonical reduced row-echelon form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .matrix import GF2Matrix, combine_rows, random_matrix, row_reduce
from .vector import GF2Vector, check_same_length, pack_bits, unpack_bits, word_count

# Enumeration of all elements is refused above this dimension.
MAX_ENUMERATION_DIM = 20


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace given by its reduced row-echelon basis.

    Two subspaces are equal as sets exactly when their bases are bitwise identical.
    """

    ambient: int
    basis: GF2Matrix
    pivots: tuple[int, ...] = field(default=())

    @classmethod
    def from_matrix(cls, m: GF2Matrix) -> "Subspace":
        reduced, pivots = row_reduce(m.data, m.cols)
        return cls(m.cols, GF2Matrix(len(pivots), m.cols, reduced), tuple(pivots))

    @classmethod
    def from_words(cls, words: np.ndarray, ambient: int) -> "Subspace":
        words = np.asarray(words, dtype=np.uint64)
        if words.ndim == 1:
            words = words.reshape(1, word_count(ambient))
        return cls.from_matrix(GF2Matrix(words.shape[0], ambient, words))

    @classmethod
    def span(cls, vectors: Sequence[GF2Vector], ambient: int) -> "Subspace":
        return cls.from_matrix(GF2Matrix.from_rows(list(vectors), ambient))

    @classmethod
    def from_strings(cls, rows: Sequence[str], ambient: int) -> "Subspace":
        return cls.from_matrix(GF2Matrix.from_strings(list(rows), ambient))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, GF2Matrix.zeros(0, ambient), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, GF2Matrix.identity(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def size(self) -> int:
        return 1 << self.dim

    def to_strings(self) -> list[str]:
        return self.basis.to_strings()

    def sort_key(self) -> tuple[int, list[str]]:
        """Descending dimension first, then lexicographic basis bit-strings."""

        return (-self.dim, self.to_strings())

    # Membership

    def contains(self, v: GF2Vector) -> bool:
        check_same_length(self.ambient, v.length)
        return bool(self.contains_words(v.words[None, :])[0])

    def contains_words(self, words: np.ndarray) -> np.ndarray:
        """Vectorized membership test for a ``(k, words)`` packed batch."""

        words = np.asarray(words, dtype=np.uint64)
        if self.dim == 0:
            return ~words.any(axis=1)
        bits = unpack_bits(words, self.ambient)
        coefficients = bits[:, list(self.pivots)]
        residual = words ^ combine_rows(coefficients, self.basis.data)
        return ~residual.any(axis=1)

    def contains_rows(self, batch: GF2Matrix) -> np.ndarray:
        check_same_length(self.ambient, batch.cols)
        return self.contains_words(batch.data)

    def is_subset(self, other: "Subspace") -> bool:
        check_same_length(self.ambient, other.ambient)
        if self.dim > other.dim:
            return False
        return bool(other.contains_rows(self.basis).all())

    # Lattice operations

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection computed from the left kernel of the stacked bases."""

        check_same_length(self.ambient, other.ambient)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        stacked = self.basis.stack(other.basis)
        relations = kernel(stacked.transpose())
        if relations.dim == 0:
            return Subspace.zero(self.ambient)
        coefficients = relations.basis.to_bits()[:, : self.dim]
        return Subspace.from_words(combine_rows(coefficients, self.basis.data), self.ambient)

    def sum(self, other: "Subspace") -> "Subspace":
        check_same_length(self.ambient, other.ambient)
        return Subspace.from_matrix(self.basis.stack(other.basis))

    def image(self, m: GF2Matrix) -> "Subspace":
        """The subspace ``{m @ x : x in self}`` of F2^{m.rows}."""

        check_same_length(self.ambient, m.cols)
        return Subspace.from_matrix(m.map_rows(self.basis))

    def annihilator(self) -> "Subspace":
        """The orthogonal complement ``{y : <y, x> = 0 for all x in self}``."""

        return kernel(self.basis)

    # Enumeration and sampling

    def elements(self) -> GF2Matrix:
        if self.dim > MAX_ENUMERATION_DIM:
            raise ValueError(f"Refusing to enumerate a subspace of dimension {self.dim}")
        codes = np.arange(self.size, dtype=np.uint64)
        coefficients = unpack_bits(codes[:, None], self.dim)
        return GF2Matrix(self.size, self.ambient, combine_rows(coefficients, self.basis.data))

    def sample_words(self, count: int, rng: np.random.Generator) -> np.ndarray:
        coefficients = rng.integers(0, 2, size=(count, self.dim), dtype=np.uint8)
        return combine_rows(coefficients, self.basis.data)

    def sample_many(self, count: int, rng: np.random.Generator) -> GF2Matrix:
        return GF2Matrix(count, self.ambient, self.sample_words(count, rng))

    def sample_uniform(self, rng: np.random.Generator) -> GF2Vector:
        return GF2Vector(self.ambient, self.sample_words(1, rng)[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis.data.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim}, basis={self.to_strings()!r})"


def canonical_basis(vectors: Sequence[GF2Vector], ambient: int) -> Subspace:
    """Span of ``vectors`` in canonical form."""

    return Subspace.span(vectors, ambient)


def kernel(m: GF2Matrix) -> Subspace:
    """The null space ``{x : m @ x = 0}``."""

    reduced, pivots = row_reduce(m.data, m.cols)
    reduced_bits = unpack_bits(reduced, m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis_bits = np.zeros((len(free), m.cols), dtype=np.uint8)
    for row, col in enumerate(free):
        basis_bits[row, col] = 1
        if pivots:
            basis_bits[row, pivots] = reduced_bits[:, col]
    return Subspace.from_words(pack_bits(basis_bits), m.cols)


def contains(s: Subspace, v: GF2Vector) -> bool:
    return s.contains(v)


def is_subset(a: Subspace, b: Subspace) -> bool:
    return a.is_subset(b)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def sample_uniform(s: Subspace, rng: np.random.Generator) -> GF2Vector:
    return s.sample_uniform(rng)


def random_subspace(ambient: int, dim: int, rng: np.random.Generator) -> Subspace:
    """Uniformly random subspace of the given dimension (rejection on rank deficiency)."""

    if not 0 <= dim <= ambient:
        raise ValueError(f"Cannot draw a {dim}-dimensional subspace of F2^{ambient}")
    while True:
        candidate = Subspace.from_matrix(random_matrix(dim, ambient, rng))
        if candidate.dim == dim:
            return candidate


__all__ = [
    "Subspace",
    "canonical_basis",
    "contains",
    "intersect",
    "is_subset",
    "kernel",
    "random_matrix",
    "random_subspace",
    "sample_uniform",
    "subspace_sum",
]
