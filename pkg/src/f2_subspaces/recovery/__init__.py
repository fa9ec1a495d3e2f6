"""Recovery algorithms for incomparable and nested subspace pairs."""

from .base_case import BaseCaseFailedError, recover_base_case
from .driver import RecoveryResult, Regime, collision_uniformity_test, recover_driver
from .incomparable import incomparable_subspace_recovery
from .large_diff import (
    DimensionMismatchError,
    LargeDiffParams,
    dependent_index_set,
    large_diff_recovery,
    split_lifted_samples,
)
from .projector import ProjectionStalledError, find_good_projector

__all__ = [
    "BaseCaseFailedError",
    "DimensionMismatchError",
    "LargeDiffParams",
    "ProjectionStalledError",
    "RecoveryResult",
    "Regime",
    "collision_uniformity_test",
    "dependent_index_set",
    "find_good_projector",
    "incomparable_subspace_recovery",
    "large_diff_recovery",
    "recover_base_case",
    "recover_driver",
    "split_lifted_samples",
]
