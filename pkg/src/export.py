"""File artifacts: trajectory CSV, JSON run summaries, and report tables."""

from __future__ import annotations

import csv
import logging
from pathlib import Path

from pydantic import BaseModel

from src.models import ClosenessReport, SweepRow, Trajectory

logger = logging.getLogger(__name__)


def _ensure_dir(path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_trajectory_csv(traj: Trajectory, path: str | Path) -> Path:
    """One row per recorded sample; the header names every channel."""
    path = _ensure_dir(Path(path))
    columns = traj.channels()
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for i in range(len(traj)):
            writer.writerow([repr(float(col[i])) for col in columns.values()])
    logger.info("wrote %d samples to %s", len(traj), path)
    return path


def read_trajectory_csv(path: str | Path) -> dict[str, list[float]]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        out: dict[str, list[float]] = {name: [] for name in reader.fieldnames or []}
        for row in reader:
            for name, value in row.items():
                out[name].append(float(value))
    return out


def write_summary_json(report: BaseModel, path: str | Path) -> Path:
    path = _ensure_dir(Path(path))
    path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    return path


def write_sweep_csv(rows: list[SweepRow], path: str | Path) -> Path:
    path = _ensure_dir(Path(path))
    fields = list(SweepRow.model_fields)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.model_dump())
    return path


def write_closeness_csv(report: ClosenessReport, path: str | Path) -> Path:
    """omega, sup error, and the ratio to the previous frequency's error."""
    path = _ensure_dir(Path(path))
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["omega", "sup_error", "decay_ratio"])
        for i, (omega, err) in enumerate(zip(report.omegas, report.sup_errors)):
            ratio = "" if i == 0 else repr(report.decay_ratios[i - 1])
            writer.writerow([repr(omega), repr(err), ratio])
    return path
