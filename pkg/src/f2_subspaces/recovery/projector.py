from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..comparability import ComparabilityParams, test_comparability
from ..config import Settings, get_settings
from ..errors import F2SubspacesError
from ..gf2 import GF2Matrix, random_matrix
from ..logging import get_logger
from ..oracle import ProjectedOracle, SampleOracle

logger = get_logger(__name__)


class ProjectionStalledError(F2SubspacesError):
    """Raised when no random projection at some level keeps the pair incomparable."""


def find_good_projector(
    o: SampleOracle,
    n: int,
    wmin: float,
    *,
    rng: np.random.Generator,
    settings: Optional[Settings] = None,
) -> GF2Matrix:
    """Compose random one-dimension-down projections until ``base_dim`` coordinates remain.

    At level ``i`` a uniform ``T`` in F2^{(i-1) x i} is accepted once the comparability test
    on the projected oracle reports an incomparable pair. Returns a ``base_dim x n`` matrix,
    or the identity when ``n <= base_dim``.
    """

    settings = settings or get_settings()
    base_dim = settings.base_dim
    projector = GF2Matrix.identity(n)
    if n <= base_dim:
        return projector

    retries = math.ceil(settings.projector_retry_constant * math.log(n + 2))
    level_delta = 1 / n**2
    for level in range(n, base_dim, -1):
        params = ComparabilityParams.for_dimension(
            level - 1, wmin, level_delta, settings.comparability_repetition_constant
        )
        for attempt in range(1, retries + 1):
            step = random_matrix(level - 1, level, rng)
            candidate = step @ projector
            if not test_comparability(ProjectedOracle(o, candidate), params):
                projector = candidate
                logger.info("projector.level.accepted", level=level - 1, attempts=attempt)
                break
        else:
            logger.error("projector.level.stalled", level=level - 1, attempts=retries)
            raise ProjectionStalledError(
                f"No projection to dimension {level - 1} kept the pair incomparable "
                f"after {retries} attempts"
            )
    return projector
