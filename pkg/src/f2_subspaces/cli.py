"""Command-line surface: ``f2mix gen | recover | test-comparability | experiment | lpn-demo``."""

import csv
import functools
import io
import json
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np
import typer
from pydantic import ValidationError

from .comparability import ComparabilityParams, test_comparability
from .config import configure_settings, get_settings
from .errors import F2SubspacesError
from .gf2 import GF2Matrix, GF2Vector
from .harness.experiment import load_experiment_config, run_experiment
from .harness.instances import InstanceDocument, InstanceSpec, parse, serialize
from .harness.report import ReportWriter, render_csv
from .logging import configure_logging, get_logger
from .lpn import (
    LpnOracle,
    lpn_draw,
    lpn_to_mixture,
    mixture_to_lpn,
    solve_lpn_with_mixture_learner,
)
from .recovery import recover_driver
from .rng import make_rng, spawn

app = typer.Typer(
    name="f2mix",
    help="Learn mixtures of two subspaces of F2^n from samples.",
    no_args_is_help=True,
    add_completion=False,
)
logger = get_logger(__name__)

EXIT_LIBRARY_ERROR = 2


class OutputFormat(str, Enum):
    json = "json"
    csv = "csv"


class RelationChoice(str, Enum):
    incomparable = "incomparable"
    nested = "nested"
    identical = "identical"
    random = "random"


def _library_errors(command: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except (F2SubspacesError, ValidationError) as exc:
            logger.error("cli.failed", command=command.__name__, error=str(exc))
            typer.echo(f"error: {exc}", err=True)
            raise typer.Exit(EXIT_LIBRARY_ERROR) from exc

    return wrapper


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value)


def _render(payload: dict[str, Any], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.json:
        return json.dumps(payload, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(payload.keys())
    writer.writerow(_csv_cell(v) for v in payload.values())
    return buffer.getvalue()


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("cli.written", path=str(out))


def _load_document(
    instance: Optional[Path],
    n: Optional[int],
    d0: Optional[int],
    d1: Optional[int],
    relation: RelationChoice,
    w0: str,
    seed: int,
) -> InstanceDocument:
    if instance is not None:
        return parse(instance.read_text(encoding="utf-8"))
    if n is None or d0 is None or d1 is None:
        raise typer.BadParameter("Pass an instance file or all of --n, --d0 and --d1")
    spec = InstanceSpec(n=n, d0=d0, d1=d1, relation=relation.value, w0=w0, seed=seed)
    return InstanceDocument.from_spec(spec)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Overrides settings."),
    log_format: Optional[str] = typer.Option(None, "--log-format", help="json or console"),
    settings_file: Optional[Path] = typer.Option(
        None, "--settings", exists=True, dir_okay=False, help="YAML settings file"
    ),
) -> None:
    try:
        settings = configure_settings(settings_file)
    except (ValidationError, ValueError) as exc:
        typer.echo(f"error: invalid settings: {exc}", err=True)
        raise typer.Exit(EXIT_LIBRARY_ERROR) from exc
    fmt = log_format or settings.log_format
    if fmt not in ("json", "console"):
        raise typer.BadParameter(f"Unknown log format {fmt!r}", param_hint="--log-format")
    configure_logging(log_level or settings.log_level, fmt)  # type: ignore[arg-type]


@app.command()
@_library_errors
def gen(
    n: int = typer.Option(..., "--n", min=1),
    d0: int = typer.Option(..., "--d0", min=0),
    d1: int = typer.Option(..., "--d1", min=0),
    relation: RelationChoice = typer.Option(RelationChoice.random, "--relation"),
    w0: str = typer.Option("0.5", "--w0", help="Decimal weight of the first component"),
    seed: int = typer.Option(0, "--seed", min=0),
    wmin: Optional[float] = typer.Option(None, "--wmin"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Generate a random instance and print its JSON."""

    spec = InstanceSpec(n=n, d0=d0, d1=d1, relation=relation.value, w0=w0, seed=seed, wmin=wmin)
    _emit(serialize(InstanceDocument.from_spec(spec)) + "\n", out)


@app.command()
@_library_errors
def recover(
    instance: Optional[Path] = typer.Argument(None, exists=True, dir_okay=False),
    n: Optional[int] = typer.Option(None, "--n", min=1),
    d0: Optional[int] = typer.Option(None, "--d0", min=0),
    d1: Optional[int] = typer.Option(None, "--d1", min=0),
    relation: RelationChoice = typer.Option(RelationChoice.random, "--relation"),
    w0: str = typer.Option("0.5", "--w0"),
    seed: int = typer.Option(0, "--seed", min=0),
    wmin: float = typer.Option(0.25, "--wmin"),
    delta: float = typer.Option(0.1, "--delta"),
    out: Optional[Path] = typer.Option(None, "--out"),
    fmt: OutputFormat = typer.Option(OutputFormat.json, "--format"),
) -> None:
    """Recover the pair of an instance file or of an inline instance spec."""

    doc = _load_document(instance, n, d0, d1, relation, w0, seed)
    a0, a1 = doc.subspaces()
    _, _, driver_rng = spawn(make_rng(doc.seed), 3)
    result = recover_driver(doc.oracle(), doc.n, wmin, delta, rng=driver_rng)
    payload = result.to_dict()
    payload["exact_match"] = result.matches(a0, a1)
    _emit(_render(payload, fmt), out)


@app.command("test-comparability")
@_library_errors
def comparability(
    instance: Optional[Path] = typer.Argument(None, exists=True, dir_okay=False),
    n: Optional[int] = typer.Option(None, "--n", min=1),
    d0: Optional[int] = typer.Option(None, "--d0", min=0),
    d1: Optional[int] = typer.Option(None, "--d1", min=0),
    relation: RelationChoice = typer.Option(RelationChoice.random, "--relation"),
    w0: str = typer.Option("0.5", "--w0"),
    seed: int = typer.Option(0, "--seed", min=0),
    wmin: float = typer.Option(0.25, "--wmin"),
    delta: float = typer.Option(0.05, "--delta"),
    out: Optional[Path] = typer.Option(None, "--out"),
    fmt: OutputFormat = typer.Option(OutputFormat.json, "--format"),
) -> None:
    """Decide whether the two hidden subspaces are nested."""

    doc = _load_document(instance, n, d0, d1, relation, w0, seed)
    a0, a1 = doc.subspaces()
    oracle = doc.oracle()
    params = ComparabilityParams.for_dimension(
        doc.n, wmin, delta, get_settings().comparability_repetition_constant
    )
    payload = {
        "comparable": test_comparability(oracle, params),
        "truth": a0.is_subset(a1) or a1.is_subset(a0),
        "n": doc.n,
        "samples": oracle.samples_drawn,
    }
    _emit(_render(payload, fmt), out)


@app.command()
@_library_errors
def experiment(
    config: Path = typer.Argument(..., exists=True, dir_okay=False),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="Overrides master_seed"),
    wmin: Optional[float] = typer.Option(None, "--wmin"),
    delta: Optional[float] = typer.Option(None, "--delta"),
    out: Optional[Path] = typer.Option(
        None, "--out", file_okay=False, help="Directory for report.csv and report.json"
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.json, "--format"),
) -> None:
    """Run a batch experiment; exits 1 when the success rate is below the threshold."""

    loaded = load_experiment_config(config)
    overrides = {
        key: value
        for key, value in {"master_seed": seed, "wmin": wmin, "delta": delta}.items()
        if value is not None
    }
    if overrides:
        loaded = type(loaded).model_validate({**loaded.model_dump(), **overrides})

    writer = ReportWriter(out / "report.csv") if out is not None else None
    report = run_experiment(loaded, writer=writer)
    if out is not None:
        (out / "report.json").write_text(report.to_json() + "\n", encoding="utf-8")
    typer.echo(report.to_json() if fmt is OutputFormat.json else render_csv(report), nl=False)
    if fmt is OutputFormat.json:
        typer.echo("")
    if not report.passed(loaded.threshold):
        raise typer.Exit(1)


@app.command("lpn-demo")
@_library_errors
def lpn_demo(
    n: int = typer.Option(8, "--n", min=1),
    eps: float = typer.Option(0.1, "--eps", min=0.0, max=0.49),
    trials: int = typer.Option(5, "--trials", min=0),
    seed: int = typer.Option(0, "--seed", min=0),
    delta: float = typer.Option(0.05, "--delta"),
    label_samples: int = typer.Option(1000, "--label-samples", min=1),
    out: Optional[Path] = typer.Option(None, "--out"),
    fmt: OutputFormat = typer.Option(OutputFormat.json, "--format"),
) -> None:
    """Round-trip LPN samples through the mixture view and solve LPN with the mixture learner."""

    solved = 0
    round_trips = 0
    agreeing = 0
    for rng in spawn(make_rng(seed), trials):
        secret = GF2Vector.from_bits(rng.integers(0, 2, size=n, dtype="uint8"))
        lpn = LpnOracle(secret, eps, rng)
        sample = lpn_draw(lpn)
        round_trips += mixture_to_lpn(lpn_to_mixture(sample), n) == sample
        x, labels = lpn.draw_many(label_samples)
        parities = GF2Matrix.from_rows([secret]).map_rows(x).to_bits()[:, 0]
        agreeing += int(np.count_nonzero(parities == labels))
        solved += solve_lpn_with_mixture_learner(lpn, delta) == secret
    payload = {
        "n": n,
        "eps": eps,
        "trials": trials,
        "round_trip_ok": round_trips,
        "solved": solved,
        "solve_rate": solved / trials if trials else None,
        "label_agreement": agreeing / (trials * label_samples) if trials else None,
    }
    _emit(_render(payload, fmt), out)
