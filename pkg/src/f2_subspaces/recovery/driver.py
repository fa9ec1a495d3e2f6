"""End-to-end recovery of a two-subspace mixture.

The driver first restricts to the span ``W`` of the samples and works in its coordinates,
then branches on comparability: incomparable pairs go through projection and base-case
recovery, nested pairs through the monomial lift for every admissible guess of the smaller
dimension, with hypothesis selection arbitrating between the guesses and "one subspace".
Nested pairs whose gap is too small for the lift are reported as the LPN-hard regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

import numpy as np

from ..comparability import (
    ComparabilityParams,
    coordinate_projector,
    estimate_span,
    test_comparability,
)
from ..config import Settings, get_settings
from ..gf2 import GF2Matrix, Subspace, random_matrix
from ..hypothesis import HypothesisList, choose_right_hypothesis
from ..logging import get_logger
from ..oracle import ProjectedOracle, SampleOracle, estimate_weights_from_oracle
from .incomparable import incomparable_subspace_recovery
from .large_diff import DimensionMismatchError, LargeDiffParams, admissible, large_diff_recovery

logger = get_logger(__name__)


class Regime(str, Enum):
    INCOMPARABLE = "incomparable"
    LARGE_GAP = "large_gap"
    LPN_HARD = "lpn_hard"
    IDENTICAL = "identical"


@dataclass(frozen=True)
class RecoveryResult:
    a0_hat: Subspace
    a1_hat: Subspace
    w0_hat: Optional[float]
    w1_hat: Optional[float]
    regime: Regime
    samples: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "regime": self.regime.value,
            "n": self.a0_hat.ambient,
            "basis_a0": self.a0_hat.to_strings(),
            "basis_a1": self.a1_hat.to_strings(),
            "dim_a0": self.a0_hat.dim,
            "dim_a1": self.a1_hat.dim,
            "w0_hat": self.w0_hat,
            "w1_hat": self.w1_hat,
            "samples": self.samples,
        }

    def matches(self, a0: Subspace, a1: Subspace) -> bool:
        """Whether the recovered pair equals ``{a0, a1}`` as a set of subspaces."""

        return {self.a0_hat, self.a1_hat} == {a0, a1}


def ordered(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace, bool]:
    """Order a pair by descending dimension, then by basis bit-strings; report a swap."""

    if b.sort_key() < a.sort_key():
        return b, a, True
    return a, b, False


def span_sample_count(n: int, wmin: float) -> int:
    return math.ceil(8 * n / wmin) + math.ceil(16 * n / wmin**2)


def _collision_sample_count(dimension: int, wmin: float, delta: float, constant: float) -> int:
    expected_collisions = constant * math.log(2 / delta) / wmin**4
    return math.ceil(math.sqrt(2 * expected_collisions * 2.0**dimension))


def _collision_verdict(o: SampleOracle, count: int, wmin: float) -> bool:
    d = o.ambient
    samples = o.draw_many(count)
    keys = samples.data[:, 0] if samples.data.shape[1] == 1 else samples.data
    _, multiplicities = np.unique(keys, axis=0, return_counts=True)
    collisions = float(np.sum(multiplicities.astype(np.float64) * (multiplicities - 1) / 2))
    collision_rate = collisions / (count * (count - 1) / 2)
    threshold = 2.0**-d * (1 + wmin**2 / 2)
    uniform = collision_rate <= threshold
    logger.info(
        "driver.uniformity",
        dimension=d,
        samples=count,
        collision_ratio=collision_rate * 2.0**d,
        uniform=uniform,
    )
    return uniform


def random_surjection(rows: int, cols: int, rng: np.random.Generator) -> GF2Matrix:
    """Uniform full-rank ``rows x cols`` matrix (``rows <= cols``)."""

    while True:
        m = random_matrix(rows, cols, rng)
        if m.rank() == rows:
            return m


def collision_uniformity_test(
    o: SampleOracle,
    wmin: float,
    delta: float,
    settings: Optional[Settings] = None,
    *,
    rng: Optional[np.random.Generator] = None,
) -> Optional[bool]:
    """Whether samples look uniform on F2^{o.ambient}, or None when no test is affordable.

    A single uniform subspace has collision probability ``2^-d``; a proper nested mixture with
    both weights at least ``wmin`` has at least ``2^-d (1 + wmin^2)``. The threshold sits
    halfway.

    When ``2^d`` is too large the test runs on images under random surjections onto the
    largest affordable ``F2^k``. The image of a uniform distribution stays uniform; a nested
    pair stays visible whenever the projector kernel lies inside the smaller component, so
    any non-uniform image settles the answer.
    """

    settings = settings or get_settings()
    d = o.ambient
    constant = settings.uniformity_constant
    count = _collision_sample_count(d, wmin, delta, constant)
    if count <= settings.uniformity_max_samples:
        return _collision_verdict(o, count, wmin)

    rounds = settings.uniformity_projection_rounds
    round_delta = delta / rounds
    k = d - 1
    while k >= 1 and (
        _collision_sample_count(k, wmin, round_delta, constant) > settings.uniformity_max_samples
    ):
        k -= 1
    if k < 1:
        logger.info("driver.uniformity.skipped", dimension=d, required=count)
        return None
    if rng is None:
        raise ValueError("A generator is needed to project the uniformity test")

    count = _collision_sample_count(k, wmin, round_delta, constant)
    logger.info("driver.uniformity.projected", dimension=d, target=k, rounds=rounds)
    for _ in range(rounds):
        if not _collision_verdict(ProjectedOracle(o, random_surjection(k, d, rng)), count, wmin):
            return False
    return True


def _nested_candidates(
    o: SampleOracle, d0: int, wmin: float, settings: Settings
) -> list[tuple[Subspace, Subspace]]:
    """Large-gap recoveries for every admissible ``d1``, largest first, as ``(A0, A1)``."""

    candidates: list[tuple[Subspace, Subspace]] = []
    for d1 in range(d0 - 1, -1, -1):
        if not admissible(d0, d1):
            continue
        params = LargeDiffParams.for_dims(d0, d1, wmin, settings.max_lift_degree)
        try:
            small, large = large_diff_recovery(o, params)
        except DimensionMismatchError:
            logger.debug("driver.nested.rejected", d0=d0, d1=d1)
            continue
        if (large, small) not in candidates:
            candidates.append((large, small))
    return candidates


def recover_driver(
    o: SampleOracle,
    n: int,
    wmin: float,
    delta: float,
    *,
    rng: np.random.Generator,
    settings: Optional[Settings] = None,
) -> RecoveryResult:
    settings = settings or get_settings()
    if n != o.ambient:
        raise ValueError(f"Oracle ambient {o.ambient} differs from n={n}")
    # Validates wmin and delta before any sampling.
    ComparabilityParams.for_dimension(n, wmin, delta, settings.comparability_repetition_constant)
    if wmin < 0.01:
        logger.warning("driver.wmin.below_guarantee", wmin=wmin)

    span = estimate_span(o, span_sample_count(n, wmin))
    logger.info("driver.span", n=n, span_dim=span.dim)
    if span.dim == 0:
        return _finish(o, span, span, None, None, Regime.IDENTICAL)

    reduced = ProjectedOracle(o, coordinate_projector(span))
    back = span.basis.transpose()
    d0 = span.dim

    params = ComparabilityParams.for_dimension(
        d0, wmin, delta, settings.comparability_repetition_constant
    )
    if not test_comparability(reduced, params):
        first, second = incomparable_subspace_recovery(
            reduced, d0, wmin, delta, rng=rng, settings=settings
        )
        return _with_weights(
            o, reduced, back, first, second, Regime.INCOMPARABLE, wmin, delta, settings
        )

    whole = Subspace.full(d0)
    uniform = collision_uniformity_test(reduced, wmin, delta, settings, rng=rng)
    if uniform:
        return _finish(o, span, span, None, None, Regime.IDENTICAL)
    if uniform is None:
        logger.warning("driver.uniformity.unavailable", d0=d0)

    candidates = _nested_candidates(reduced, d0, wmin, settings)
    if not candidates:
        if uniform is False:
            return _lpn_hard(o, span, d0)
        logger.warning("driver.nested.none", d0=d0)
        return _finish(o, span, span, None, None, Regime.IDENTICAL)

    hypotheses = HypothesisList([(whole, whole), *candidates], w0_lower=wmin)
    winner = choose_right_hypothesis(reduced, hypotheses, delta, settings)
    if winner == 0:
        # A detected mixture that no candidate explains has a gap below the lift.
        if uniform is False:
            return _lpn_hard(o, span, d0)
        return _finish(o, span, span, None, None, Regime.IDENTICAL)
    large, small = candidates[winner - 1]
    return _with_weights(
        o, reduced, back, large, small, Regime.LARGE_GAP, wmin, delta, settings,
        hard_if_degenerate=uniform is False,
    )


def _lpn_hard(o: SampleOracle, span: Subspace, d0: int) -> RecoveryResult:
    logger.info("driver.regime.lpn_hard", d0=d0)
    return _finish(o, span, Subspace.zero(span.ambient), None, None, Regime.LPN_HARD)


def _with_weights(
    o: SampleOracle,
    reduced: SampleOracle,
    back: GF2Matrix,
    first: Subspace,
    second: Subspace,
    regime: Regime,
    wmin: float,
    delta: float,
    settings: Settings,
    *,
    hard_if_degenerate: bool = False,
) -> RecoveryResult:
    """Estimate weights in reduced coordinates, then map the pair back to F2^n."""

    first, second, _ = ordered(first, second)
    if first == second:
        whole = first.image(back)
        return _finish(o, whole, whole, None, None, Regime.IDENTICAL)
    w_first, w_second = estimate_weights_from_oracle(
        reduced, first, second, settings.weight_epsilon, delta
    )
    if regime is Regime.LARGE_GAP and min(w_first, w_second) < wmin / 2:
        logger.info("driver.weights.degenerate", w0_hat=w_first, w1_hat=w_second)
        whole = first.sum(second).image(back)
        if hard_if_degenerate:
            return _lpn_hard(o, whole, back.cols)
        return _finish(o, whole, whole, None, None, Regime.IDENTICAL)
    w_first, w_second = estimate_weights_from_oracle(
        reduced, first, second, settings.weight_epsilon, delta
    )
    if regime is Regime.LARGE_GAP and min(w_first, w_second) < wmin / 2:
        logger.info("driver.weights.degenerate", w0_hat=w_first, w1_hat=w_second)
        whole = first.sum(second).image(back)
        return _finish(o, whole, whole, None, None, Regime.IDENTICAL)
    return _finish(o, first.image(back), second.image(back), w_first, w_second, regime)


def _finish(
    o: SampleOracle,
    a: Subspace,
    b: Subspace,
    wa: Optional[float],
    wb: Optional[float],
    regime: Regime,
) -> RecoveryResult:
    a0, a1, swapped = ordered(a, b)
    w0, w1 = (wb, wa) if swapped else (wa, wb)
    logger.info(
        "driver.regime",
        regime=regime.value,
        dims=(a0.dim, a1.dim),
        w0_hat=w0,
        samples=o.samples_drawn,
    )
    return RecoveryResult(a0, a1, w0, w1, regime, samples=o.samples_drawn)
