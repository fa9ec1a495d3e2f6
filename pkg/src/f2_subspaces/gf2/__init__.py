"""Bit-packed linear algebra over the two-element field."""

from .matrix import GF2Matrix, rank, random_matrix, row_reduce, solve
from .subspace import (
    Subspace,
    canonical_basis,
    contains,
    intersect,
    is_subset,
    kernel,
    random_subspace,
    sample_uniform,
    subspace_sum,
)
from .vector import GF2Vector

__all__ = [
    "GF2Matrix",
    "GF2Vector",
    "Subspace",
    "canonical_basis",
    "contains",
    "intersect",
    "is_subset",
    "kernel",
    "rank",
    "random_matrix",
    "random_subspace",
    "row_reduce",
    "sample_uniform",
    "solve",
    "subspace_sum",
]
