"""Recovery of nested pairs with a large dimension gap via the monomial lift.

Lifting every sample with all monomials of degree at most ``ell`` puts the samples of the
small component into a space of dimension ``C(d1, <= ell)`` while samples of the large one
stay linearly independent. Samples that depend on the others are therefore exactly the ones
from the small component, with high probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import get_settings
from ..errors import F2SubspacesError
from ..gf2 import GF2Matrix, Subspace, kernel
from ..gf2.vector import unpack_bits
from ..logging import get_logger
from ..oracle import SampleOracle
from ..poly import MonomialLift, binom_le

logger = get_logger(__name__)


class DimensionMismatchError(F2SubspacesError, ValueError):
    """Raised when recovered dimensions differ from the hypothesized ones."""


def lift_degree_formula(alpha: float, wmin: float) -> int:
    return math.ceil(2 * math.log2(100 / wmin) / (1 - alpha))


def admissible(d0: int, d1: int) -> bool:
    """Whether ``alpha = d1/d0`` lies below ``1 - ln(d0)/sqrt(d0)``."""

    if d0 <= 0 or not 0 <= d1 < d0:
        return False
    return d1 / d0 < 1 - math.log(d0) / math.sqrt(d0)


@dataclass(frozen=True, slots=True)
class LargeDiffParams:
    d0: int
    d1: int
    alpha: float
    ell: int
    m: int
    wmin: float

    @classmethod
    def for_dims(
        cls, d0: int, d1: int, wmin: float, max_lift_degree: Optional[int] = None
    ) -> "LargeDiffParams":
        if not 0 <= d1 < d0:
            raise ValueError(f"Need 0 <= d1 < d0, got d0={d0}, d1={d1}")
        if max_lift_degree is None:
            max_lift_degree = get_settings().max_lift_degree
        alpha = d1 / d0
        ell = max(1, min(lift_degree_formula(alpha, wmin), max_lift_degree, d0))
        return cls(d0=d0, d1=d1, alpha=alpha, ell=ell, m=binom_le(d0, ell), wmin=wmin)

    @property
    def admissible(self) -> bool:
        return admissible(self.d0, self.d1)


def dependent_index_set(vectors: GF2Matrix) -> frozenset[int]:
    """Indices ``i`` with ``v_i`` in the span of the other rows (0-based).

    These are the union of the supports of a basis of the kernel of the matrix whose columns
    are the vectors.
    """

    relations = kernel(vectors.transpose())
    if relations.dim == 0:
        return frozenset()
    support = np.bitwise_or.reduce(relations.basis.data, axis=0)
    return frozenset(np.flatnonzero(unpack_bits(support, vectors.rows)).tolist())


def split_lifted_samples(
    samples: GF2Matrix, ell: int
) -> tuple[Subspace, Subspace, frozenset[int]]:
    """Split samples into ``(span of dependent lifts, span of the rest outside it, indices)``."""

    lifted = MonomialLift(samples.cols, ell).lift_rows(samples)
    dependent = dependent_index_set(lifted)
    small = Subspace.from_matrix(samples.take(sorted(dependent)))
    large = Subspace.from_matrix(samples.take(~small.contains_rows(samples)))
    return small, large, dependent


def large_diff_recovery(o: SampleOracle, params: LargeDiffParams) -> tuple[Subspace, Subspace]:
    """Return ``(A1, A0)``: the smaller component first."""

    if params.wmin < 0.01:
        logger.warning("large_diff.wmin.below_guarantee", wmin=params.wmin)
    samples = o.draw_many(params.m)
    small, large, dependent = split_lifted_samples(samples, params.ell)
    logger.debug(
        "large_diff.split",
        d0=params.d0,
        d1=params.d1,
        ell=params.ell,
        samples=params.m,
        dependent=len(dependent),
        dims=(small.dim, large.dim),
    )
    if small.dim != params.d1 or large.dim != params.d0:
        raise DimensionMismatchError(
            f"Recovered dimensions ({small.dim}, {large.dim}) differ from "
            f"hypothesized ({params.d1}, {params.d0})"
        )
    return small, large
