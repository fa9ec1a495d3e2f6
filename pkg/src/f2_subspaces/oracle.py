"""Sampling oracles for mixtures of two subspaces and weight estimation."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Protocol, Union, overload, Literal

import numpy as np

from .errors import F2SubspacesError
from .gf2 import GF2Matrix, GF2Vector, Subspace
from .gf2.vector import check_same_length, word_count
from .logging import get_logger

logger = get_logger(__name__)

WeightLike = Union[Fraction, float, str, int]


class UnidentifiableError(F2SubspacesError):
    """Raised when the mixing weights cannot be recovered because both components coincide."""


class InsufficientSamplesError(F2SubspacesError):
    """Raised when an oracle cannot supply the requested number of samples."""


class SampleOracle(Protocol):
    """Anything that emits i.i.d. samples in F2^ambient."""

    @property
    def ambient(self) -> int: ...

    @property
    def samples_drawn(self) -> int: ...

    def draw(self) -> GF2Vector: ...

    def draw_many(self, count: int) -> GF2Matrix: ...


def as_fraction(weight: WeightLike) -> Fraction:
    """Exact rational from a weight; floats go through their shortest decimal repr."""

    if isinstance(weight, Fraction):
        value = weight
    elif isinstance(weight, float):
        value = Fraction(repr(weight))
    else:
        value = Fraction(weight)
    if not 0 <= value <= 1:
        raise ValueError(f"Weight {weight} is not a probability")
    return value


class MixtureOracle:
    """Draws a uniform element of ``a0`` with probability ``w0`` and of ``a1`` otherwise."""

    def __init__(
        self,
        a0: Subspace,
        a1: Subspace,
        w0: WeightLike,
        rng: np.random.Generator,
        budget: Optional[int] = None,
    ) -> None:
        check_same_length(a0.ambient, a1.ambient)
        self.a0 = a0
        self.a1 = a1
        self.w0 = as_fraction(w0)
        self._rng = rng
        self._budget = budget
        self._drawn = 0

    @property
    def w1(self) -> Fraction:
        return 1 - self.w0

    @property
    def ambient(self) -> int:
        return self.a0.ambient

    @property
    def samples_drawn(self) -> int:
        return self._drawn

    def _consume(self, count: int) -> None:
        if count < 0:
            raise ValueError("Sample count must be non-negative")
        if self._budget is not None and self._drawn + count > self._budget:
            logger.warning(
                "oracle.budget.exhausted",
                requested=count,
                drawn=self._drawn,
                budget=self._budget,
            )
            raise InsufficientSamplesError(
                f"Requested {count} samples with {self._budget - self._drawn} left in the budget"
            )
        self._drawn += count

    @overload
    def draw_many(self, count: int, with_labels: Literal[False] = ...) -> GF2Matrix: ...

    @overload
    def draw_many(
        self, count: int, with_labels: Literal[True]
    ) -> tuple[GF2Matrix, np.ndarray]: ...

    def draw_many(self, count: int, with_labels: bool = False):
        """Draw ``count`` samples; with ``with_labels`` also return the hidden component (0/1)."""

        self._consume(count)
        labels = (self._rng.random(count) >= float(self.w0)).astype(np.uint8)
        from_a1 = labels.astype(bool)
        data = np.zeros((count, word_count(self.ambient)), dtype=np.uint64)
        data[~from_a1] = self.a0.sample_words(int((~from_a1).sum()), self._rng)
        data[from_a1] = self.a1.sample_words(int(from_a1.sum()), self._rng)
        samples = GF2Matrix(count, self.ambient, data)
        if with_labels:
            return samples, labels
        return samples

    def draw(self) -> GF2Vector:
        return self.draw_many(1).row(0)


class ProjectedOracle:
    """The oracle returning ``projector @ x`` for each sample ``x`` of ``inner``."""

    def __init__(self, inner: SampleOracle, projector: GF2Matrix) -> None:
        check_same_length(inner.ambient, projector.cols)
        self.inner = inner
        self.projector = projector

    @property
    def ambient(self) -> int:
        return self.projector.rows

    @property
    def samples_drawn(self) -> int:
        return self.inner.samples_drawn

    def draw_many(self, count: int) -> GF2Matrix:
        return self.projector.map_rows(self.inner.draw_many(count))

    def draw(self) -> GF2Vector:
        return self.draw_many(1).row(0)


def draw(o: SampleOracle) -> GF2Vector:
    return o.draw()


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def estimate_weights(samples: GF2Matrix, a0: Subspace, a1: Subspace) -> tuple[float, float]:
    """Estimate ``(w0, w1)`` from the mass of the part of one component outside the other.

    ``P[x in a0 \\ a1] = w0 * |a0 \\ a1| / |a0|``; when ``a0`` is strictly inside ``a1`` the
    symmetric identity on ``a1 \\ a0`` identifies ``w1`` instead.
    """

    check_same_length(a0.ambient, a1.ambient, samples.cols)
    if a0 == a1:
        raise UnidentifiableError("Both components are the same subspace")
    if samples.rows == 0:
        raise InsufficientSamplesError("Cannot estimate weights from an empty sample")
    shared_dim = a0.intersect(a1).dim
    in_a0 = a0.contains_rows(samples)
    in_a1 = a1.contains_rows(samples)
    if not a0.is_subset(a1):
        frequency = float(np.mean(in_a0 & ~in_a1))
        w0_hat = _clamp(frequency * a0.size / (a0.size - (1 << shared_dim)))
        return w0_hat, 1.0 - w0_hat
    frequency = float(np.mean(in_a1 & ~in_a0))
    w1_hat = _clamp(frequency * a1.size / (a1.size - (1 << shared_dim)))
    return 1.0 - w1_hat, w1_hat


def weight_sample_count(epsilon: float, delta: float) -> int:
    """Hoeffding count for estimating a frequency within ``epsilon`` with confidence ``delta``."""

    return math.ceil(8 * math.log(2 / delta) / epsilon**2)


def estimate_weights_from_oracle(
    o: SampleOracle, a0: Subspace, a1: Subspace, epsilon: float, delta: float
) -> tuple[float, float]:
    count = weight_sample_count(epsilon, delta)
    logger.debug("oracle.weights.estimate", samples=count, epsilon=epsilon, delta=delta)
    return estimate_weights(o.draw_many(count), a0, a1)
