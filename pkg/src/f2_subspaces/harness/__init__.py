"""Instances, reports and batch experiments."""

from .experiment import ConfigError, ExperimentConfig, load_experiment_config, run_experiment
from .instances import (
    InfeasibleSpecError,
    InstanceDocument,
    InstanceSpec,
    gen_instance,
    parse,
    serialize,
)
from .report import ExperimentReport, ReportWriter, TrialRow

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ExperimentReport",
    "InfeasibleSpecError",
    "InstanceDocument",
    "InstanceSpec",
    "ReportWriter",
    "TrialRow",
    "gen_instance",
    "load_experiment_config",
    "parse",
    "run_experiment",
    "serialize",
]
