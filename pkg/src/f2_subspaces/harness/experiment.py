"""Batch experiments: many seeded instances through the recovery driver."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..config import Settings, get_settings
from ..errors import F2SubspacesError
from ..logging import get_logger
from ..oracle import MixtureOracle
from ..recovery import recover_driver
from ..rng import child_seeds, make_rng, spawn
from .instances import InstanceSpec, gen_instance
from .report import ExperimentReport, ReportWriter, TrialRow

logger = get_logger(__name__)

FAILED_REGIME = "failed"


class ConfigError(F2SubspacesError):
    """Raised for unreadable or invalid experiment files; carries 1-based source positions."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        source: Optional[str] = None,
    ) -> None:
        self.line = line
        self.column = column
        self.source = source
        where = source or "<config>"
        if line is not None:
            where = f"{where}:{line}:{column or 1}"
        super().__init__(f"{where}: {message}")


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    trials: int = Field(ge=0)
    master_seed: int = Field(default=0, ge=0)
    instance: InstanceSpec
    wmin: float = Field(gt=0, le=0.5)
    delta: float = Field(gt=0, lt=1)
    threshold: float = Field(default=0.9, ge=0, le=1)
    workers: Optional[int] = Field(default=None, ge=1)
    record_timing: bool = False
    settings: dict[str, Any] = Field(default_factory=dict)

    def resolved_settings(self, base: Optional[Settings] = None) -> Settings:
        base = base or get_settings()
        if not self.settings:
            return base
        try:
            return Settings(**{**base.model_dump(), **self.settings})
        except ValidationError as exc:
            raise ConfigError(f"Invalid settings override: {exc.errors()[0]['msg']}") from exc


def _locate(text: str, loc: Sequence[Union[str, int]]) -> tuple[Optional[int], Optional[int]]:
    """1-based line and column of the YAML node at ``loc`` (or its deepest existing parent)."""

    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return None, None
    if node is None:
        return None, None
    for key in loc:
        child = None
        if isinstance(node, yaml.MappingNode):
            for key_node, value_node in node.value:
                if key_node.value == key:
                    child = value_node
                    break
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int):
            if 0 <= key < len(node.value):
                child = node.value[key]
        if child is None:
            break
        node = child
    return node.start_mark.line + 1, node.start_mark.column + 1


def parse_experiment_config(text: str, source: Optional[str] = None) -> ExperimentConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark is not None else None
        column = mark.column + 1 if mark is not None else None
        raise ConfigError(str(exc.problem or exc), line, column, source) from exc
    except yaml.YAMLError as exc:
        raise ConfigError(str(exc), source=source) from exc
    if not isinstance(data, dict):
        raise ConfigError("Experiment file must contain a mapping", 1, 1, source)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        line, column = _locate(text, first["loc"])
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ConfigError(f"{field}: {first['msg']}", line, column, source) from exc


def load_experiment_config(path: Path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read experiment file: {exc}", source=str(path)) from exc
    return parse_experiment_config(text, source=str(path))


def run_trial(
    trial: int, seed: int, config: ExperimentConfig, settings: Settings
) -> TrialRow:
    """One seeded instance through the driver; library failures become failed rows."""

    spec = config.instance.model_copy(update={"seed": seed})
    _, _, driver_rng = spawn(make_rng(seed), 3)
    started = time.perf_counter_ns()
    oracle: Optional[MixtureOracle] = None
    try:
        a0, a1, oracle = gen_instance(spec)
        result = recover_driver(
            oracle, spec.n, config.wmin, config.delta, rng=driver_rng, settings=settings
        )
    except F2SubspacesError as exc:
        logger.warning("experiment.trial.failed", trial=trial, seed=seed, error=str(exc))
        return TrialRow(
            trial=trial,
            seed=seed,
            regime=FAILED_REGIME,
            exact_match=False,
            samples=oracle.samples_drawn if oracle is not None else 0,
            micros=(time.perf_counter_ns() - started) // 1000 if config.record_timing else 0,
        )
    elapsed = (time.perf_counter_ns() - started) // 1000 if config.record_timing else 0

    exact = result.matches(a0, a1)
    w0_err = None
    if exact and result.w0_hat is not None:
        true_w0 = float(spec.weight) if result.a0_hat == a0 else 1 - float(spec.weight)
        w0_err = abs(result.w0_hat - true_w0)
    return TrialRow(
        trial=trial,
        seed=seed,
        regime=result.regime.value,
        exact_match=exact,
        w0_err=w0_err,
        samples=result.samples,
        micros=elapsed,
    )


def run_experiment(
    config: Union[ExperimentConfig, Path],
    *,
    settings: Optional[Settings] = None,
    writer: Optional[ReportWriter] = None,
) -> ExperimentReport:
    """Run every trial of ``config`` and aggregate; rows are ordered by trial index."""

    if not isinstance(config, ExperimentConfig):
        config = load_experiment_config(config)
    settings = config.resolved_settings(settings)
    seeds = child_seeds(config.master_seed, config.trials) if config.trials else []
    workers = config.workers or settings.workers
    logger.info(
        "experiment.start",
        name=config.name,
        trials=config.trials,
        workers=workers,
        relation=config.instance.relation,
    )

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(
            pool.map(
                lambda item: run_trial(item[0], item[1], config, settings),
                enumerate(seeds),
            )
        )

    report = ExperimentReport.from_rows(rows, name=config.name)
    if writer is not None:
        writer.write_report(report)
    logger.info(
        "experiment.done",
        name=config.name,
        trials=report.trials,
        success_rate=report.success_rate,
        passed=report.passed(config.threshold),
    )
    return report
