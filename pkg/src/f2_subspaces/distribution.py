"""Exact densities of two-subspace mixtures and distances between them.

Every density here is constant on the membership atoms of the subspaces involved (the
points lying in exactly a given subset of them). Atom sizes follow from the dimensions of
intersections by inclusion-exclusion, so nothing enumerates F2^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .gf2 import GF2Matrix, GF2Vector, Subspace
from .gf2.vector import check_same_length
from .oracle import WeightLike, as_fraction


@dataclass(frozen=True)
class SubspaceMixtureDistribution:
    """Density ``wa * [x in a] / |a| + wb * [x in b] / |b|`` with ``wb = 1 - wa``."""

    a: Subspace
    b: Subspace
    wa: Fraction

    def __init__(self, a: Subspace, b: Subspace, wa: WeightLike) -> None:
        check_same_length(a.ambient, b.ambient)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "wa", as_fraction(wa))

    @property
    def wb(self) -> Fraction:
        return 1 - self.wa

    @property
    def ambient(self) -> int:
        return self.a.ambient

    def density(self, x: GF2Vector) -> Fraction:
        value = Fraction(0)
        if self.a.contains(x):
            value += self.wa / self.a.size
        if self.b.contains(x):
            value += self.wb / self.b.size
        return value

    def density_on(self, in_a: bool, in_b: bool) -> Fraction:
        return (self.wa / self.a.size if in_a else 0) + (self.wb / self.b.size if in_b else 0)


def exact_density(d: SubspaceMixtureDistribution, x: GF2Vector) -> Fraction:
    return d.density(x)


class AtomPartition:
    """Nonempty membership atoms of a family of distinct subspaces.

    Atom ``mask`` holds the points lying in subspace ``i`` exactly when bit ``i`` of ``mask``
    is set.
    """

    def __init__(self, subspaces: Sequence[Subspace]) -> None:
        if not subspaces:
            raise ValueError("At least one subspace is required")
        check_same_length(*(s.ambient for s in subspaces))
        distinct: list[Subspace] = []
        for s in subspaces:
            if s not in distinct:
                distinct.append(s)
        self.subspaces = distinct
        self.ambient = distinct[0].ambient
        self._index = {s: i for i, s in enumerate(distinct)}
        self.sizes = self._atom_sizes()

    def index(self, s: Subspace) -> int:
        return self._index[s]

    def _atom_sizes(self) -> dict[int, int]:
        k = len(self.subspaces)
        # Size of the intersection over each subset of the family; the empty subset is F2^n.
        intersection_size: dict[int, int] = {0: 1 << self.ambient}
        meets: dict[int, Subspace] = {}
        for r in range(1, k + 1):
            for subset in combinations(range(k), r):
                mask = sum(1 << i for i in subset)
                if r == 1:
                    meet = self.subspaces[subset[0]]
                else:
                    meet = meets[mask & ~(1 << subset[-1])].intersect(self.subspaces[subset[-1]])
                meets[mask] = meet
                intersection_size[mask] = meet.size
        sizes: dict[int, int] = {}
        full = (1 << k) - 1
        for mask in range(1 << k):
            total = 0
            rest = full & ~mask
            sub = rest
            while True:
                sign = -1 if bin(sub).count("1") % 2 else 1
                total += sign * intersection_size[mask | sub]
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            if total:
                sizes[mask] = total
        return sizes

    @property
    def masks(self) -> list[int]:
        return sorted(self.sizes)

    def density(self, d: SubspaceMixtureDistribution, mask: int) -> Fraction:
        in_a = bool(mask >> self.index(d.a) & 1)
        in_b = bool(mask >> self.index(d.b) & 1)
        return d.density_on(in_a, in_b)

    def density_vector(self, a: Subspace, b: Subspace, weights: np.ndarray) -> np.ndarray:
        """Float densities of ``D(a, b, w)`` on every atom, for each weight in ``weights``.

        Returns an array of shape ``(len(weights), len(masks))``.
        """

        masks = np.array(self.masks, dtype=np.int64)
        in_a = ((masks >> self.index(a)) & 1).astype(np.float64)
        in_b = ((masks >> self.index(b)) & 1).astype(np.float64)
        weights = np.asarray(weights, dtype=np.float64)[:, None]
        return weights * in_a / a.size + (1.0 - weights) * in_b / b.size

    def signatures(self, batch: GF2Matrix) -> np.ndarray:
        """Atom mask of every row of ``batch``."""

        out = np.zeros(batch.rows, dtype=np.int64)
        for i, s in enumerate(self.subspaces):
            out |= s.contains_rows(batch).astype(np.int64) << i
        return out


def exact_tv(d1: SubspaceMixtureDistribution, d2: SubspaceMixtureDistribution) -> Fraction:
    """Total-variation distance, exactly, summed over membership atoms."""

    check_same_length(d1.ambient, d2.ambient)
    atoms = AtomPartition([d1.a, d1.b, d2.a, d2.b])
    total = Fraction(0)
    for mask, size in atoms.sizes.items():
        total += size * abs(atoms.density(d1, mask) - atoms.density(d2, mask))
    return total / 2


def scheffe_mass(
    d: SubspaceMixtureDistribution,
    di: SubspaceMixtureDistribution,
    dj: SubspaceMixtureDistribution,
) -> Fraction:
    """Mass under ``d`` of the set where the density of ``di`` exceeds that of ``dj``."""

    check_same_length(d.ambient, di.ambient, dj.ambient)
    atoms = AtomPartition([d.a, d.b, di.a, di.b, dj.a, dj.b])
    mass = Fraction(0)
    for mask, size in atoms.sizes.items():
        if atoms.density(di, mask) > atoms.density(dj, mask):
            mass += size * atoms.density(d, mask)
    return mass
