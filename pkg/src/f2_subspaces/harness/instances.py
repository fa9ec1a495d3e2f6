"""Random problem instances and their JSON representation."""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import F2SubspacesError
from ..gf2 import GF2Matrix, Subspace, random_subspace
from ..logging import get_logger
from ..oracle import MixtureOracle
from ..rng import make_rng, spawn

logger = get_logger(__name__)

Relation = Literal["incomparable", "nested", "identical", "random"]

# Rejection sampling of incomparable pairs gives up after this many draws.
MAX_REJECTIONS = 1000


class InfeasibleSpecError(F2SubspacesError):
    """Raised when no instance can satisfy the requested shape."""


def _parse_weight(value: object) -> str:
    try:
        weight = Decimal(str(value))
    except InvalidOperation as exc:
        raise ValueError(f"w0 must be a decimal number, got {value!r}") from exc
    if not Decimal(0) <= weight <= Decimal(1):
        raise ValueError(f"w0 must lie in [0, 1], got {value}")
    return str(value)


class InstanceSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(ge=1)
    d0: int = Field(ge=0)
    d1: int = Field(ge=0)
    relation: Relation = "random"
    w0: str = "0.5"
    seed: int = Field(default=0, ge=0)
    wmin: Optional[float] = Field(default=None, gt=0, le=0.5)

    @field_validator("w0", mode="before")
    @classmethod
    def check_w0(cls, value: object) -> str:
        return _parse_weight(value)

    @model_validator(mode="after")
    def check_shape(self) -> "InstanceSpec":
        if self.d0 > self.n or self.d1 > self.n:
            raise ValueError(f"Dimensions ({self.d0}, {self.d1}) exceed n={self.n}")
        if self.wmin is not None:
            w0 = float(self.weight)
            if not self.wmin <= w0 <= 1 - self.wmin:
                raise ValueError(
                    f"w0={self.w0} lies outside [wmin, 1 - wmin] for wmin={self.wmin}"
                )
        return self

    @property
    def weight(self) -> Fraction:
        return Fraction(Decimal(self.w0))


def _check_feasible(spec: InstanceSpec) -> None:
    if spec.relation == "incomparable":
        if min(spec.d0, spec.d1) < 1:
            raise InfeasibleSpecError("Incomparable pairs need both dimensions >= 1")
        if max(spec.d0, spec.d1) >= spec.n:
            raise InfeasibleSpecError("The whole space contains every other subspace")
    elif spec.relation == "nested" and spec.d1 > spec.d0:
        raise InfeasibleSpecError(f"Nested pairs need d1 <= d0, got d0={spec.d0}, d1={spec.d1}")
    elif spec.relation == "identical" and spec.d0 != spec.d1:
        raise InfeasibleSpecError("Identical pairs need d0 == d1")


def random_sub_subspace(outer: Subspace, dim: int, rng: np.random.Generator) -> Subspace:
    """Uniform ``dim``-dimensional subspace of ``outer``."""

    coordinates = random_subspace(outer.dim, dim, rng)
    return Subspace.from_matrix(coordinates.basis @ outer.basis)


def generate_pair(spec: InstanceSpec, rng: np.random.Generator) -> tuple[Subspace, Subspace]:
    _check_feasible(spec)
    if spec.relation == "nested":
        a0 = random_subspace(spec.n, spec.d0, rng)
        return a0, random_sub_subspace(a0, spec.d1, rng)
    if spec.relation == "identical":
        a0 = random_subspace(spec.n, spec.d0, rng)
        return a0, a0
    if spec.relation == "random":
        return random_subspace(spec.n, spec.d0, rng), random_subspace(spec.n, spec.d1, rng)
    for _ in range(MAX_REJECTIONS):
        a0 = random_subspace(spec.n, spec.d0, rng)
        a1 = random_subspace(spec.n, spec.d1, rng)
        if not a0.is_subset(a1) and not a1.is_subset(a0):
            return a0, a1
    raise InfeasibleSpecError(f"No incomparable pair found in {MAX_REJECTIONS} draws")


def gen_instance(spec: InstanceSpec) -> tuple[Subspace, Subspace, MixtureOracle]:
    """Deterministic instance for ``spec.seed``: the pair and a seeded oracle for it."""

    structure_rng, oracle_rng = spawn(make_rng(spec.seed), 2)
    a0, a1 = generate_pair(spec, structure_rng)
    logger.debug(
        "instances.generated",
        relation=spec.relation,
        n=spec.n,
        dims=(a0.dim, a1.dim),
        seed=spec.seed,
    )
    return a0, a1, MixtureOracle(a0, a1, spec.weight, oracle_rng)


class InstanceDocument(BaseModel):
    """Instance JSON: bases as bit-strings with coordinate 0 leftmost."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    basis_a0: list[str]
    basis_a1: list[str]
    w0: str
    seed: int = Field(ge=0)

    @field_validator("w0", mode="before")
    @classmethod
    def check_w0(cls, value: object) -> str:
        return _parse_weight(value)

    @field_validator("basis_a0", "basis_a1")
    @classmethod
    def check_rows(cls, rows: list[str]) -> list[str]:
        for row in rows:
            if any(ch not in "01" for ch in row):
                raise ValueError(f"Not a bit-string: {row!r}")
        return rows

    @model_validator(mode="after")
    def check_lengths(self) -> "InstanceDocument":
        for row in [*self.basis_a0, *self.basis_a1]:
            if len(row) != self.n:
                raise ValueError(f"Basis row {row!r} does not have length n={self.n}")
        return self

    @classmethod
    def from_instance(
        cls, a0: Subspace, a1: Subspace, w0: str, seed: int
    ) -> "InstanceDocument":
        return cls(
            n=a0.ambient, basis_a0=a0.to_strings(), basis_a1=a1.to_strings(), w0=w0, seed=seed
        )

    @classmethod
    def from_spec(cls, spec: InstanceSpec) -> "InstanceDocument":
        a0, a1, _ = gen_instance(spec)
        return cls.from_instance(a0, a1, spec.w0, spec.seed)

    def _subspace(self, name: str, rows: list[str]) -> Subspace:
        s = Subspace.from_matrix(GF2Matrix.from_strings(rows, self.n))
        if s.to_strings() != rows:
            logger.warning(
                "instances.basis.canonicalized",
                basis=name,
                given=rows,
                canonical=s.to_strings(),
            )
        return s

    def subspaces(self) -> tuple[Subspace, Subspace]:
        a0 = self._subspace("basis_a0", self.basis_a0)
        return a0, self._subspace("basis_a1", self.basis_a1)

    @property
    def weight(self) -> Fraction:
        return Fraction(Decimal(self.w0))

    def oracle(self) -> MixtureOracle:
        """Seeded oracle for the stored pair (same stream as :func:`gen_instance`)."""

        a0, a1 = self.subspaces()
        _, oracle_rng = spawn(make_rng(self.seed), 2)
        return MixtureOracle(a0, a1, self.weight, oracle_rng)


def serialize(doc: InstanceDocument) -> str:
    return doc.model_dump_json(indent=2)


def parse(text: str) -> InstanceDocument:
    return InstanceDocument.model_validate_json(text)
