"""Experiment reports: per-trial CSV rows and an aggregate JSON summary."""

from __future__ import annotations

import csv
import threading
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field
from scipy.stats import binomtest

REPORT_FIELDS = ["trial", "seed", "regime", "exact_match", "w0_err", "samples", "micros"]


class TrialRow(BaseModel):
    trial: int = Field(ge=0)
    seed: int
    regime: str
    exact_match: bool
    w0_err: Optional[float] = None
    samples: int = Field(ge=0)
    micros: int = Field(default=0, ge=0)

    def csv_row(self) -> dict[str, str]:
        return {
            "trial": str(self.trial),
            "seed": str(self.seed),
            "regime": self.regime,
            "exact_match": "1" if self.exact_match else "0",
            "w0_err": "" if self.w0_err is None else f"{self.w0_err:.6f}",
            "samples": str(self.samples),
            "micros": str(self.micros),
        }


class ExperimentReport(BaseModel):
    name: str = "experiment"
    rows: list[TrialRow] = Field(default_factory=list)
    success_rate: Optional[float] = None
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None

    @classmethod
    def from_rows(cls, rows: list[TrialRow], name: str = "experiment") -> "ExperimentReport":
        """Aggregate rows; the 95% interval is the Wilson score interval."""

        ordered = sorted(rows, key=lambda r: r.trial)
        if not ordered:
            return cls(name=name, rows=[])
        successes = sum(r.exact_match for r in ordered)
        interval = binomtest(successes, len(ordered)).proportion_ci(0.95, method="wilson")
        return cls(
            name=name,
            rows=ordered,
            success_rate=successes / len(ordered),
            ci_low=float(interval.low),
            ci_high=float(interval.high),
        )

    @property
    def trials(self) -> int:
        return len(self.rows)

    def passed(self, threshold: float) -> bool:
        """Undefined success rates (no trials) pass."""

        return self.success_rate is None or self.success_rate >= threshold

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


class ReportWriter:
    """Thread-safe CSV writer appending report rows under a single header."""

    _locks: dict[str, threading.Lock] = {}

    def __init__(self, filepath: Path | str, fieldnames: Optional[list[str]] = None) -> None:
        self.filepath = Path(filepath)
        self.fieldnames = fieldnames or list(REPORT_FIELDS)
        self._ensure_dir()
        key = str(self.filepath.resolve())
        if key not in ReportWriter._locks:
            ReportWriter._locks[key] = threading.Lock()
        self._lock = ReportWriter._locks[key]
        self._ensure_header()

    def _ensure_dir(self) -> None:
        self.filepath.parent.mkdir(parents=True, exist_ok=True)

    def _ensure_header(self) -> None:
        if not self.filepath.exists() or self.filepath.stat().st_size == 0:
            with self._lock, open(self.filepath, mode="w", newline="", encoding="utf-8") as f:
                writer = csv.DictWriter(f, fieldnames=self.fieldnames, lineterminator="\n")
                writer.writeheader()

    def log(self, row: TrialRow) -> None:
        with self._lock, open(self.filepath, mode="a", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=self.fieldnames, lineterminator="\n")
            writer.writerow(row.csv_row())

    def write_report(self, report: ExperimentReport) -> None:
        for row in report.rows:
            self.log(row)


def render_csv(report: ExperimentReport) -> str:
    """The CSV byte stream of a report, header included."""

    lines = [",".join(REPORT_FIELDS)]
    for row in report.rows:
        values = row.csv_row()
        lines.append(",".join(values[name] for name in REPORT_FIELDS))
    return "\n".join(lines) + "\n"
