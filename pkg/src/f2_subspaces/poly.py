"""Quadratic polynomials over F2^n and the degree-ell monomial lift.

Monomials are ordered globally: the constant first, then by ascending degree, and
lexicographically by variable indices within one degree. For ``n = 2, ell = 2`` this is
``1, x0, x1, x0*x1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import F2SubspacesError
from .gf2 import GF2Matrix, GF2Vector
from .gf2.vector import check_same_length

Monomial = tuple[int, ...]


class LiftDegreeError(F2SubspacesError, ValueError):
    """Raised when the lift degree exceeds the number of variables."""


def binom_le(n: int, ell: int) -> int:
    """``C(n, <= ell)``: the number of multilinear monomials of degree at most ``ell``."""

    return sum(comb(n, k) for k in range(0, min(n, ell) + 1))


@lru_cache(maxsize=64)
def monomials(n: int, ell: int) -> tuple[Monomial, ...]:
    out: list[Monomial] = [()]
    for degree in range(1, min(n, ell) + 1):
        out.extend(combinations(range(n), degree))
    return tuple(out)


@lru_cache(maxsize=64)
def monomial_index(n: int, ell: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(n, ell))}


class MonomialLift:
    """The map sending ``x`` to the values of every monomial of degree at most ``ell``."""

    def __init__(self, n: int, ell: int) -> None:
        if n < 0 or ell < 0:
            raise ValueError("Dimension and degree must be non-negative")
        self.n = n
        self.ell = ell
        self.monomials = monomials(n, ell)
        self._by_degree = [
            np.array([m for m in self.monomials if len(m) == degree], dtype=np.intp).reshape(
                -1, degree
            )
            for degree in range(1, min(n, ell) + 1)
        ]

    @property
    def length(self) -> int:
        return len(self.monomials)

    def lift_bits(self, bits: np.ndarray) -> np.ndarray:
        """Lift a ``(k, n)`` 0/1 array to its ``(k, length)`` monomial values."""

        bits = np.asarray(bits, dtype=np.uint8)
        columns = [np.ones((bits.shape[0], 1), dtype=np.uint8)]
        for index in self._by_degree:
            columns.append(np.bitwise_and.reduce(bits[:, index], axis=2))
        return np.concatenate(columns, axis=1)

    def lift_rows(self, batch: GF2Matrix) -> GF2Matrix:
        check_same_length(self.n, batch.cols)
        return GF2Matrix.from_bits(self.lift_bits(batch.to_bits()))

    def lift(self, x: GF2Vector) -> GF2Vector:
        check_same_length(self.n, x.length)
        return GF2Vector.from_bits(self.lift_bits(x.to_bits()[None, :])[0])


def lift(x: GF2Vector, ell: int) -> GF2Vector:
    if ell > x.length:
        raise LiftDegreeError(f"Lift degree {ell} exceeds the dimension {x.length}")
    return MonomialLift(x.length, ell).lift(x)


@dataclass(frozen=True)
class QuadraticPoly:
    """A polynomial of degree at most two, stored as coefficients in the monomial order."""

    n: int
    coeffs: GF2Vector

    def __post_init__(self) -> None:
        expected = binom_le(self.n, 2)
        if self.coeffs.length != expected:
            raise ValueError(f"Expected {expected} coefficients, got {self.coeffs.length}")

    @classmethod
    def zero(cls, n: int) -> "QuadraticPoly":
        return cls(n, GF2Vector.zeros(binom_le(n, 2)))

    @classmethod
    def from_monomials(cls, n: int, terms: Iterable[Sequence[int]]) -> "QuadraticPoly":
        """Sum of the given monomials; ``()`` is the constant 1 and repeated terms cancel."""

        index = monomial_index(n, 2)
        bits = np.zeros(binom_le(n, 2), dtype=np.uint8)
        for term in terms:
            key = tuple(sorted(set(term)))
            if key not in index:
                raise ValueError(f"{tuple(term)} is not a monomial of degree <= 2 in {n} variables")
            bits[index[key]] ^= 1
        return cls(n, GF2Vector.from_bits(bits))

    @classmethod
    def product_of_linear(cls, u: GF2Vector, v: GF2Vector) -> "QuadraticPoly":
        """The polynomial ``<u, x> * <v, x>`` (using ``x_i^2 = x_i``)."""

        n = check_same_length(u.length, v.length)
        ub, vb = u.to_bits(), v.to_bits()
        index = monomial_index(n, 2)
        bits = np.zeros(binom_le(n, 2), dtype=np.uint8)
        for i in range(n):
            bits[index[(i,)]] = ub[i] & vb[i]
            for j in range(i + 1, n):
                bits[index[(i, j)]] = (ub[i] & vb[j]) ^ (ub[j] & vb[i])
        return cls(n, GF2Vector.from_bits(bits))

    def evaluate(self, x: GF2Vector) -> int:
        check_same_length(self.n, x.length)
        return self.coeffs.dot(MonomialLift(self.n, 2).lift(x))

    def evaluate_rows(self, batch: GF2Matrix) -> np.ndarray:
        lifted = MonomialLift(self.n, 2).lift_rows(batch)
        return (lifted.to_bits() @ self.coeffs.to_bits().astype(np.int64) % 2).astype(np.uint8)

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def __add__(self, other: "QuadraticPoly") -> "QuadraticPoly":
        check_same_length(self.n, other.n)
        return QuadraticPoly(self.n, self.coeffs + other.coeffs)


def eval_quadratic(p: QuadraticPoly, x: GF2Vector) -> int:
    return p.evaluate(x)


def evaluation_matrix(points: GF2Matrix, ell: int = 2) -> GF2Matrix:
    """One row per point: the monomial lift of that point."""

    return MonomialLift(points.cols, ell).lift_rows(points)


def count_vanishing_quadratics(points: GF2Matrix, n: int) -> int:
    """log2 of the number of polynomials of degree <= 2 vanishing on every point."""

    check_same_length(points.cols, n)
    return binom_le(n, 2) - evaluation_matrix(points, 2).rank()
