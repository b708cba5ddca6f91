"""Dataset containers, CSV ingestion, and per-column centering."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import IoError, ParseError, ShapeError

# Column means after centering must vanish relative to the column spread;
# constant columns are held to an absolute tolerance instead.
_REL_CENTER_TOL = 1e-10
_ABS_CENTER_TOL = 1e-12


@dataclass(frozen=True)
class DataMatrix:
    """A sample-by-feature matrix. Rows are samples, columns are features."""

    values: np.ndarray
    centered: bool = False
    label: str | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise ShapeError(f"expected 2-d matrix, got ndim={v.ndim}")
        if v.shape[0] < 2 or v.shape[1] < 1:
            raise ShapeError(f"need n >= 2 and p >= 1, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ShapeError("matrix contains non-finite entries")
        v = np.ascontiguousarray(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.centered:
            means = v.mean(axis=0)
            stds = v.std(axis=0)
            tol = np.where(stds > 0, _REL_CENTER_TOL * stds, _ABS_CENTER_TOL)
            if np.any(np.abs(means) > tol):
                raise ShapeError("centered=True but column means are not zero")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class LabeledPartition:
    """Cluster assignments: nonnegative ids in [0, k), every cluster nonempty."""

    assignments: np.ndarray
    k: int = field(default=0)

    def __post_init__(self):
        a = np.asarray(self.assignments, dtype=int)
        if a.ndim != 1 or a.size == 0:
            raise ShapeError("assignments must be a nonempty 1-d vector")
        k = self.k if self.k else int(a.max()) + 1
        if a.min() < 0 or a.max() >= k:
            raise ShapeError(f"cluster ids must lie in [0, {k})")
        if len(np.unique(a)) != k:
            raise ShapeError("every cluster id in [0, k) must be nonempty")
        a.setflags(write=False)
        object.__setattr__(self, "assignments", a)
        object.__setattr__(self, "k", k)

    @property
    def n(self) -> int:
        return self.assignments.size


def load_csv(path: str | Path, has_header: bool = False, label: str | None = None) -> DataMatrix:
    """Read a comma-separated numeric matrix; row order is preserved."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if has_header and lines:
        lines = lines[1:]
    if not lines:
        raise ShapeError(f"{path}: no data rows")
    rows = []
    width = None
    for r, line in enumerate(lines, start=1):
        cells = line.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ShapeError(f"{path}: row {r} has {len(cells)} cells, expected {width}")
        parsed = []
        for c, cell in enumerate(cells, start=1):
            try:
                val = float(cell)
            except ValueError:
                raise ParseError(r, c, cell.strip()) from None
            if not np.isfinite(val):
                raise ParseError(r, c, cell.strip())
            parsed.append(val)
        rows.append(parsed)
    return DataMatrix(np.asarray(rows, dtype=float), centered=False, label=label)


def save_csv(d: DataMatrix, path: str | Path) -> None:
    """Write with 17 significant digits so load_csv round-trips exactly."""
    np.savetxt(path, d.values, delimiter=",", fmt="%.17g")


def center_columns(d: DataMatrix) -> DataMatrix:
    """Subtract each column's mean. Idempotent.

    A second pass removes the cancellation residual left by the first
    subtraction on large-magnitude columns.
    """
    if d.centered:
        return d
    vals = d.values - d.values.mean(axis=0)
    vals -= vals.mean(axis=0)
    return DataMatrix(vals, centered=True, label=d.label)
