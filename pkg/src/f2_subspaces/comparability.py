"""Deciding from samples whether the two hidden subspaces are nested.

One round spans the support from ``t`` samples, moves to coordinates of that span, and
counts the quadratics vanishing on ``r`` fresh samples. A nested pair leaves only the zero
polynomial; an incomparable pair ``U, V`` always keeps ``<b_U, x> * <b_V, x>`` where
``b_U`` and ``b_V`` annihilate ``U`` and ``V``. Rounds are repeated and the majority wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import get_settings
from .errors import F2SubspacesError
from .gf2 import GF2Matrix, GF2Vector, Subspace, solve
from .logging import get_logger
from .oracle import ProjectedOracle, SampleOracle
from .poly import count_vanishing_quadratics

logger = get_logger(__name__)


class InvalidParamsError(F2SubspacesError, ValueError):
    """Raised when the comparability test is configured with an impossible parameter."""


@dataclass(frozen=True, slots=True)
class ComparabilityParams:
    n: int
    wmin: float
    delta: float
    t: int
    r: int
    repetitions: int

    @classmethod
    def for_dimension(
        cls,
        n: int,
        wmin: float,
        delta: float,
        repetition_constant: float | None = None,
    ) -> "ComparabilityParams":
        if n <= 0:
            raise InvalidParamsError(f"Ambient dimension must be positive, got {n}")
        if not 0 < wmin <= 0.5:
            raise InvalidParamsError(f"wmin must lie in (0, 1/2], got {wmin}")
        if not 0 < delta < 1:
            raise InvalidParamsError(f"delta must lie in (0, 1), got {delta}")
        if repetition_constant is None:
            repetition_constant = get_settings().comparability_repetition_constant
        repetitions = math.ceil(repetition_constant * math.log(2 / delta))
        if repetitions % 2 == 0:
            repetitions += 1
        return cls(
            n=n,
            wmin=wmin,
            delta=delta,
            t=math.ceil(16 * n / wmin**2),
            r=math.ceil(8 * n**2 / wmin),
            repetitions=repetitions,
        )


def estimate_span(o: SampleOracle, t: int) -> Subspace:
    """Span of ``t`` fresh samples."""

    return Subspace.from_matrix(o.draw_many(t))


def coordinate_projector(s: Subspace) -> GF2Matrix:
    """A ``dim(s) x n`` matrix ``D`` with ``D @ y_i = e_i`` for the basis rows ``y_i`` of ``s``."""

    rows = []
    for i in range(s.dim):
        solution = solve(s.basis, GF2Vector.unit(s.dim, i))
        if solution is None:  # pragma: no cover - the basis has full row rank
            raise ArithmeticError("Basis rows are not independent")
        rows.append(solution)
    return GF2Matrix.from_rows(rows, s.ambient)


def comparability_round(o: SampleOracle, params: ComparabilityParams) -> bool:
    span = estimate_span(o, params.t)
    if span.dim == 0:
        return True
    projected = ProjectedOracle(o, coordinate_projector(span))
    points = projected.draw_many(params.r)
    vanishing = count_vanishing_quadratics(points, span.dim)
    logger.debug("comparability.round", span_dim=span.dim, vanishing_log2=vanishing)
    return vanishing == 0


def test_comparability(o: SampleOracle, params: ComparabilityParams) -> bool:
    """Majority vote over ``params.repetitions`` independent rounds.

    Voting stops as soon as one answer holds a strict majority.
    """

    needed = params.repetitions // 2 + 1
    votes = {True: 0, False: 0}
    for _ in range(params.repetitions):
        votes[comparability_round(o, params)] += 1
        if max(votes.values()) >= needed:
            break
    verdict = votes[True] >= needed
    logger.info(
        "comparability.verdict",
        comparable=verdict,
        n=params.n,
        votes_comparable=votes[True],
        votes_incomparable=votes[False],
    )
    return verdict


# Not a pytest test despite the name.
test_comparability.__test__ = False  # type: ignore[attr-defined]
