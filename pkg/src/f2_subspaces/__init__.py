"""Learning mixtures of two subspaces of F2^n from samples."""

from .errors import AmbientMismatchError, F2SubspacesError
from .gf2 import GF2Matrix, GF2Vector, Subspace
from .oracle import MixtureOracle, SampleOracle
from .recovery import RecoveryResult, Regime, recover_driver

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatchError",
    "F2SubspacesError",
    "GF2Matrix",
    "GF2Vector",
    "MixtureOracle",
    "RecoveryResult",
    "Regime",
    "SampleOracle",
    "Subspace",
    "recover_driver",
]
