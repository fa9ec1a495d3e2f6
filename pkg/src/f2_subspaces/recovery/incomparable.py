from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..config import Settings, get_settings
from ..gf2 import Subspace
from ..logging import get_logger
from ..oracle import ProjectedOracle, SampleOracle
from .base_case import recover_base_case
from .projector import find_good_projector

logger = get_logger(__name__)


def incomparable_subspace_recovery(
    o: SampleOracle,
    n: int,
    wmin: float,
    delta: float,
    *,
    rng: np.random.Generator,
    settings: Optional[Settings] = None,
) -> tuple[Subspace, Subspace]:
    """Recover an incomparable pair exactly.

    The pair is pushed down to ``base_dim`` coordinates, solved there as ``(U, V)``, and
    lifted back: fresh samples whose image leaves ``V`` span one component and those whose
    image leaves ``U`` span the other.
    """

    settings = settings or get_settings()
    projector = find_good_projector(o, n, wmin, rng=rng, settings=settings)
    small = ProjectedOracle(o, projector)
    u, v = recover_base_case(small, wmin, delta, settings)

    t = math.ceil(settings.incomparable_span_constant * n / wmin)
    samples = o.draw_many(t)
    images = projector.map_rows(samples)
    first = Subspace.from_matrix(samples.take(~v.contains_rows(images)))
    second = Subspace.from_matrix(samples.take(~u.contains_rows(images)))
    logger.info(
        "incomparable.recovered",
        n=n,
        projected_dims=(u.dim, v.dim),
        dims=(first.dim, second.dim),
        samples=t,
    )
    return first, second
