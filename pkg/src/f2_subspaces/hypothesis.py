"""Choosing the right subspace pair from a candidate list.

Each candidate pair ``(A_j, B_j)`` is expanded into the mixtures ``D(A_j, B_j, w)`` for ``w``
on a grid over ``[w0_lower, 1]``. A Scheffe tournament over all gridded mixtures is played on
one shared sample batch: in the contest between ``D_i`` and ``D_k`` (``i < k``) the Scheffe
set is ``{x : D_i(x) > D_k(x)}`` and ``D_i`` wins when its exact mass on that set is at least
as close to the empirical mass as the mass under ``D_k``. The mixture with most wins is
returned as the index of its pair; ties go to the lowest index.

Densities are constant on membership atoms, so one block of contests between two pairs is
evaluated for the whole weight grid at once.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .config import Settings, get_settings
from .distribution import AtomPartition
from .errors import F2SubspacesError
from .gf2 import GF2Matrix, Subspace
from .gf2.vector import check_same_length
from .logging import get_logger
from .oracle import SampleOracle, WeightLike, as_fraction

logger = get_logger(__name__)

# Relative slack when comparing float densities and deviations.
_TOLERANCE = 1e-12

Pair = tuple[Subspace, Subspace]


class EmptyHypothesisListError(F2SubspacesError, ValueError):
    """Raised when hypothesis selection is asked to choose from nothing."""


class HypothesisList:
    """Candidate pairs plus the weight grid they are expanded over."""

    def __init__(
        self,
        items: Sequence[Pair],
        w0_lower: WeightLike,
        epsilon: Optional[WeightLike] = None,
    ) -> None:
        self.items: list[Pair] = list(items)
        if self.items:
            check_same_length(*(s.ambient for pair in self.items for s in pair))
        self.w0_lower = as_fraction(w0_lower)
        if not 0 < self.w0_lower <= 1:
            raise ValueError(f"w0_lower must lie in (0, 1], got {w0_lower}")
        if epsilon is None:
            self.epsilon = self.w0_lower / get_settings().hypothesis_grid_divisor
        else:
            self.epsilon = as_fraction(epsilon)
            if self.epsilon == 0:
                raise ValueError("epsilon must be positive")
        self.grid_size = math.ceil(1 / self.epsilon)
        self.gamma = (1 - self.w0_lower) / self.grid_size

    def __len__(self) -> int:
        return len(self.items)

    @property
    def ambient(self) -> int:
        return self.items[0][0].ambient

    def grid(self) -> list[Fraction]:
        """The weights ``w0_lower + k * gamma`` for ``k = 0..M``."""

        return [self.w0_lower + k * self.gamma for k in range(self.grid_size + 1)]

    @property
    def distribution_count(self) -> int:
        return len(self.items) * (self.grid_size + 1)

    def sample_count(self, delta: float, settings: Optional[Settings] = None) -> int:
        settings = settings or get_settings()
        eps = float(self.epsilon)
        wanted = math.ceil(
            settings.hypothesis_sample_constant
            / eps**2
            * (math.log(self.distribution_count) + math.log(1 / delta))
        )
        if wanted > settings.hypothesis_max_samples:
            logger.info(
                "hypothesis.samples.capped",
                wanted=wanted,
                cap=settings.hypothesis_max_samples,
                distributions=self.distribution_count,
            )
            return settings.hypothesis_max_samples
        return wanted


def _block_wins(
    first: Pair,
    second: Pair,
    membership: dict[Subspace, np.ndarray],
    sample_total: int,
    weights: np.ndarray,
    same_pair: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Wins collected by every grid point of ``first`` and of ``second`` against each other."""

    atoms = AtomPartition([first[0], first[1], second[0], second[1]])
    masks = np.array(atoms.masks, dtype=np.int64)
    sizes = np.array([atoms.sizes[m] for m in atoms.masks], dtype=np.float64)
    observed = np.zeros(sample_total, dtype=np.int64)
    for s in atoms.subspaces:
        observed |= membership[s].astype(np.int64) << atoms.index(s)
    counts = np.array([np.count_nonzero(observed == m) for m in masks], dtype=np.float64)
    empirical = counts / max(sample_total, 1)

    dens_i = atoms.density_vector(first[0], first[1], weights)
    dens_k = atoms.density_vector(second[0], second[1], weights)
    scale = np.maximum(dens_i[:, None, :], dens_k[None, :, :])
    scheffe = (dens_i[:, None, :] - dens_k[None, :, :] > _TOLERANCE * scale).astype(np.float64)

    mass_i = np.einsum("ikA,iA->ik", scheffe, dens_i * sizes)
    mass_k = np.einsum("ikA,kA->ik", scheffe, dens_k * sizes)
    mass_emp = np.einsum("ikA,A->ik", scheffe, empirical)
    i_wins = np.abs(mass_i - mass_emp) <= np.abs(mass_k - mass_emp) + _TOLERANCE

    if same_pair:
        upper = np.triu(np.ones_like(i_wins, dtype=bool), k=1)
        wins_i = (i_wins & upper).sum(axis=1)
        wins_k = (~i_wins & upper).sum(axis=0)
    else:
        wins_i = i_wins.sum(axis=1)
        wins_k = (~i_wins).sum(axis=0)
    return wins_i, wins_k


def tournament_winner(h: HypothesisList, samples: GF2Matrix) -> int:
    """Index of the pair owning the gridded mixture with most wins on ``samples``."""

    if not h.items:
        raise EmptyHypothesisListError("Hypothesis list is empty")
    weights = np.array([float(w) for w in h.grid()], dtype=np.float64)
    per_pair = weights.shape[0]
    membership = {s: s.contains_rows(samples) for pair in h.items for s in pair}
    wins = np.zeros((len(h.items), per_pair), dtype=np.int64)
    for j, first in enumerate(h.items):
        for k in range(j, len(h.items)):
            wins_j, wins_k = _block_wins(
                first, h.items[k], membership, samples.rows, weights, same_pair=j == k
            )
            wins[j] += wins_j
            wins[k] += wins_k
    best = int(np.argmax(wins.reshape(-1)))
    return best // per_pair


def choose_right_hypothesis(
    o: SampleOracle,
    h: HypothesisList,
    delta: float,
    settings: Optional[Settings] = None,
) -> int:
    """Index of the candidate pair matching the oracle's distribution."""

    if not h.items:
        raise EmptyHypothesisListError("Hypothesis list is empty")
    if len(h.items) == 1:
        return 0
    check_same_length(h.ambient, o.ambient)
    count = h.sample_count(delta, settings)
    samples = o.draw_many(count)
    winner = tournament_winner(h, samples)
    logger.info(
        "hypothesis.selected",
        candidates=len(h.items),
        grid_points=h.grid_size + 1,
        samples=count,
        winner=winner,
    )
    return winner
