"""Reductions between learning parity with noise and two-subspace mixtures.

An LPN sample ``(x, y)`` concatenated into F2^{n+1} is distributed as the mixture of the
whole space (weight ``2 eps``) and the hyperplane ``{(x, y) : <s, x> + y = 0}`` (weight
``1 - 2 eps``). Conversely, splitting a mixture sample at a coordinate in the support of the
hyperplane's constraint yields an LPN sample.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import partial
from typing import Callable, Optional

import numpy as np

from .config import Settings, get_settings
from .errors import F2SubspacesError
from .gf2 import GF2Matrix, GF2Vector, Subspace
from .gf2.vector import pack_bits
from .hypothesis import HypothesisList, choose_right_hypothesis
from .logging import get_logger
from .oracle import SampleOracle, as_fraction

logger = get_logger(__name__)


class LpnTooLargeError(F2SubspacesError, ValueError):
    """Raised when exhaustive LPN solving is asked for too many variables."""


class LpnOracle:
    """Emits ``(x, <secret, x> + noise)`` with ``x`` uniform and noise ~ Bernoulli(eps)."""

    def __init__(self, secret: GF2Vector, eps: float, rng: np.random.Generator) -> None:
        if not 0 <= eps < 0.5:
            raise ValueError(f"Noise rate must lie in [0, 1/2), got {eps}")
        self.secret = secret
        self.eps = eps
        self._rng = rng
        self._drawn = 0

    @property
    def n(self) -> int:
        return self.secret.length

    @property
    def samples_drawn(self) -> int:
        return self._drawn

    def draw_many(self, count: int) -> tuple[GF2Matrix, np.ndarray]:
        self._drawn += count
        x = GF2Matrix.from_bits(self._rng.integers(0, 2, size=(count, self.n), dtype=np.uint8))
        clean = GF2Matrix.from_rows([self.secret]).map_rows(x).to_bits()[:, 0]
        noise = (self._rng.random(count) < self.eps).astype(np.uint8)
        return x, clean ^ noise


def lpn_draw(o: LpnOracle) -> tuple[GF2Vector, int]:
    x, y = o.draw_many(1)
    return x.row(0), int(y[0])


def lpn_to_mixture(sample: tuple[GF2Vector, int]) -> GF2Vector:
    x, y = sample
    return x.concat(GF2Vector.from_bits([y]))


def lpn_mixture_components(secret: GF2Vector, eps: float) -> tuple[Subspace, Subspace, Fraction]:
    """``(A0, A1, w0)`` of the mixture induced by concatenated LPN samples."""

    n = secret.length
    constraint = lpn_to_mixture((secret, 1))
    hyperplane = Subspace.span([constraint], n + 1).annihilator()
    return Subspace.full(n + 1), hyperplane, 2 * as_fraction(eps)


class LpnMixtureOracle:
    """An LPN oracle seen as a sample oracle over F2^{n+1}."""

    def __init__(self, lpn: LpnOracle) -> None:
        self.lpn = lpn

    @property
    def ambient(self) -> int:
        return self.lpn.n + 1

    @property
    def samples_drawn(self) -> int:
        return self.lpn.samples_drawn

    def draw_many(self, count: int) -> GF2Matrix:
        x, y = self.lpn.draw_many(count)
        bits = np.hstack([x.to_bits(), y[:, None]])
        return GF2Matrix(count, self.ambient, pack_bits(bits))

    def draw(self) -> GF2Vector:
        return self.draw_many(1).row(0)


def mixture_to_lpn(sample: GF2Vector, j: int) -> tuple[GF2Vector, int]:
    """Split off coordinate ``j`` (0-based) as the label."""

    if not 0 <= j < sample.length:
        raise IndexError(f"Coordinate {j} out of range for length {sample.length}")
    return sample.delete(j), sample.bit(j)


def split_batch(samples: GF2Matrix, j: int) -> tuple[GF2Matrix, np.ndarray]:
    bits = samples.to_bits()
    return GF2Matrix.from_bits(np.delete(bits, j, axis=1)), bits[:, j].copy()


def _bit_reverse(values: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(values)
    for i in range(n):
        out |= ((values >> i) & 1) << (n - 1 - i)
    return out


def brute_force_lpn(
    xs: GF2Matrix, ys: np.ndarray, n: int, settings: Optional[Settings] = None
) -> GF2Vector:
    """The parity agreeing with the most samples; ties go to the smallest bit-string.

    Agreement minus disagreement for every parity at once is the Walsh-Hadamard transform of
    the signed label counts.
    """

    settings = settings or get_settings()
    if n > settings.lpn_max_dimension:
        raise LpnTooLargeError(f"Refusing exhaustive search over 2^{n} parities")
    if xs.rows and xs.cols != n:
        raise ValueError(f"Samples have {xs.cols} coordinates, expected {n}")
    size = 1 << n
    scores = np.zeros(size, dtype=np.int64)
    if xs.rows:
        codes = xs.data[:, 0].astype(np.int64) if n else np.zeros(xs.rows, np.int64)
        signs = 1 - 2 * np.asarray(ys, dtype=np.int64)
        np.add.at(scores, codes, signs)
    h = 1
    while h < size:
        blocks = scores.reshape(-1, 2, h)
        low, high = blocks[:, 0, :].copy(), blocks[:, 1, :].copy()
        blocks[:, 0, :] = low + high
        blocks[:, 1, :] = low - high
        h *= 2
    best = np.flatnonzero(scores == scores.max())
    code = int(best[np.argmin(_bit_reverse(best, n))])
    return GF2Vector.from_int(code, n)


def parity_from_hyperplane(h: Subspace) -> GF2Vector:
    """The nonzero vector ``c`` with ``h = {x : <c, x> = 0}``."""

    normal = h.annihilator()
    if normal.dim != 1:
        raise ValueError(f"Not a hyperplane: codimension {normal.dim}")
    return normal.basis.row(0)


def hyperplane_for_guess(secret: GF2Vector, j: int) -> Subspace:
    """The hyperplane ``x_j = <secret, x_{-j}>`` of F2^{n+1}."""

    bits = np.insert(secret.to_bits(), j, 1)
    return Subspace.span([GF2Vector.from_bits(bits)], bits.shape[0]).annihilator()


def lpn_sample_count(n: int, eps: float, delta: float, factor: float) -> int:
    return math.ceil(factor * 2 * (n * math.log(2) + math.log(1 / delta)) / (0.5 - eps) ** 2)


def recover_parity_subspace(
    o: SampleOracle,
    eps: float,
    delta: float,
    *,
    selection_epsilon: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> Subspace:
    """Recover the hyperplane component of ``(F2^{n+1}, A1, 2 eps, 1 - 2 eps)``.

    Every coordinate is tried as the label; each induced LPN instance is solved exhaustively
    and the resulting hyperplanes are validated by hypothesis selection.
    """

    settings = settings or get_settings()
    ambient = o.ambient
    n = ambient - 1
    per_guess = lpn_sample_count(n, eps, delta / ambient, settings.lpn_sample_factor)
    whole = Subspace.full(ambient)
    candidates: list[Subspace] = []
    for j in range(ambient):
        xs, ys = split_batch(o.draw_many(per_guess), j)
        guess = hyperplane_for_guess(brute_force_lpn(xs, ys, n, settings), j)
        if guess not in candidates:
            candidates.append(guess)
    logger.info("lpn.parity.candidates", ambient=ambient, candidates=len(candidates))
    w0_lower = min(2 * eps, 1 - 2 * eps)
    hypotheses = HypothesisList(
        [(whole, c) for c in candidates], w0_lower=w0_lower, epsilon=selection_epsilon
    )
    return candidates[choose_right_hypothesis(o, hypotheses, delta, settings)]


def solve_lpn_with_mixture_learner(
    lpn: LpnOracle,
    delta: float,
    learner: Optional[Callable[[SampleOracle], Subspace]] = None,
    settings: Optional[Settings] = None,
) -> GF2Vector:
    """Solve LPN by learning the hyperplane of the simulated mixture and reading off its normal.

    ``learner`` maps a sample oracle over F2^{n+1} to the recovered hyperplane; by default the
    guess-and-validate parity recovery is used.
    """

    oracle = LpnMixtureOracle(lpn)
    if learner is None:
        learner = partial(recover_parity_subspace, eps=lpn.eps, delta=delta, settings=settings)

    normal = parity_from_hyperplane(learner(oracle)).to_bits()
    if not normal[-1]:
        raise F2SubspacesError("Recovered hyperplane does not involve the label coordinate")
    return GF2Vector.from_bits(normal[:-1])
