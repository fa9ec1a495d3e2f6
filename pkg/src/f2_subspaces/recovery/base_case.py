"""Exact recovery of an incomparable pair in small dimension.

With ``S = U | V`` observed in full, for any ``x`` lying in exactly one component the set
``T_x = {y in S : x + y in S}`` is that component: F2-spaces are never the union of two
proper subspaces. Candidate pairs are built from the maximal ``T_x`` that are subspaces and
whose union is ``S``; hypothesis selection picks among them.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Optional

import numpy as np

from ..config import Settings, get_settings
from ..errors import F2SubspacesError
from ..gf2 import Subspace
from ..hypothesis import HypothesisList, choose_right_hypothesis
from ..logging import get_logger
from ..oracle import SampleOracle

logger = get_logger(__name__)

MAX_BASE_DIM = 20


class BaseCaseFailedError(F2SubspacesError):
    """Raised when the observed support does not split into two subspaces."""


def coupon_collector_count(v: int, wmin: float, delta: float) -> int:
    """Samples needed to observe every point of ``U | V`` with probability ``1 - delta/2``."""

    return math.ceil((2 ** (v + 1) / wmin) * (v * math.log(2) + math.log(4 / delta)))


def _codes_to_subspace(codes: np.ndarray, v: int) -> Subspace:
    return Subspace.from_words(codes.astype(np.uint64).reshape(-1, 1), v)


def shift_sets(support: np.ndarray, v: int) -> list[np.ndarray]:
    """``T_x`` for every ``x`` in ``support`` (points given as integer codes)."""

    member = np.zeros(1 << v, dtype=bool)
    member[support] = True
    return [support[member[support ^ x]] for x in support]


def subspace_shift_sets(support: np.ndarray, v: int) -> list[Subspace]:
    """Distinct ``T_x`` that are subspaces, i.e. contain 0 and have ``2^rank`` elements."""

    found: dict[Subspace, None] = {}
    for shifted in shift_sets(support, v):
        size = shifted.shape[0]
        if size & (size - 1) or not np.any(shifted == 0):
            continue
        span = _codes_to_subspace(shifted, v)
        if span.size == size:
            found.setdefault(span, None)
    return list(found)


def maximal(subspaces: list[Subspace]) -> list[Subspace]:
    return [
        s
        for s in subspaces
        if not any(s != other and s.is_subset(other) for other in subspaces)
    ]


def covering_pairs(
    candidates: list[Subspace], support_size: int
) -> list[tuple[Subspace, Subspace]]:
    pairs = []
    for first, second in combinations(candidates, 2):
        union = first.size + second.size - first.intersect(second).size
        if union == support_size:
            pairs.append((first, second))
    return pairs


def recover_base_case(
    o: SampleOracle,
    wmin: float,
    delta: float,
    settings: Optional[Settings] = None,
) -> tuple[Subspace, Subspace]:
    settings = settings or get_settings()
    v = o.ambient
    if not 1 <= v <= MAX_BASE_DIM:
        raise ValueError(f"Base case needs a dimension in [1, {MAX_BASE_DIM}], got {v}")
    count = coupon_collector_count(v, wmin, delta)
    samples = o.draw_many(count)
    support = np.unique(samples.data[:, 0].astype(np.int64))

    candidates = maximal(subspace_shift_sets(support, v))
    pairs = covering_pairs(candidates, support.shape[0])
    logger.info(
        "base_case.candidates",
        dimension=v,
        samples=count,
        support=int(support.shape[0]),
        maximal_subspaces=len(candidates),
        pairs=len(pairs),
    )
    if not pairs:
        raise BaseCaseFailedError(
            f"No pair among {len(candidates)} maximal subspaces covers the observed support"
        )
    hypotheses = HypothesisList(pairs, w0_lower=wmin)
    winner = choose_right_hypothesis(o, hypotheses, delta / 2, settings)
    return pairs[winner]
