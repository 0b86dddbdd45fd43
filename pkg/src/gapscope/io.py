"""File formats shared by the command-line tools.

Plain CSV for matrices (n x n) and point configurations (one point per
row), JSON for normed-space descriptors.  Floats are written with the
shortest round-trip repr so that rerunning a seeded pipeline reproduces
byte-identical artifacts.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Union

import numpy as np

from .errors import InvalidParameterError
from .norms import NormedSpace, space_from_dict, space_to_dict

__all__ = [
    "format_float",
    "read_matrix_csv",
    "write_matrix_csv",
    "read_points_csv",
    "write_points_csv",
    "read_space_json",
    "write_space_json",
]

PathLike = Union[str, Path]


def format_float(x: float) -> str:
    """Shortest decimal string that parses back to exactly ``x``."""
    return repr(float(x))


def write_points_csv(path: PathLike, points: np.ndarray) -> None:
    """Write an (n, d) real array as CSV, one point per row."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.size == 0:
        raise InvalidParameterError(f"expected a nonempty 2-d array, got shape {pts.shape}")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in pts:
            writer.writerow([format_float(v) for v in row])


def _open_for_reading(path: PathLike):
    # surface unreadable paths through the library's own error type so the
    # CLI turns them into messages instead of tracebacks
    try:
        return open(path, newline="")
    except OSError as exc:
        raise InvalidParameterError(f"cannot read {path}: {exc}") from exc


def read_points_csv(path: PathLike) -> np.ndarray:
    """Read a CSV of reals into an (n, d) array.  Blank lines are skipped."""
    rows: list[list[float]] = []
    with _open_for_reading(path) as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                rows.append([float(cell) for cell in row])
            except ValueError as exc:
                raise InvalidParameterError(f"{path}: line {lineno}: {exc}") from exc
    if not rows:
        raise InvalidParameterError(f"{path}: no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InvalidParameterError(f"{path}: rows have inconsistent column counts")
    return np.asarray(rows, dtype=float)


def write_matrix_csv(path: PathLike, matrix: np.ndarray) -> None:
    """Write a square real matrix as CSV."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidParameterError(f"expected a square matrix, got shape {m.shape}")
    write_points_csv(path, m)


def read_matrix_csv(path: PathLike) -> np.ndarray:
    """Read a square matrix from CSV."""
    m = read_points_csv(path)
    if m.shape[0] != m.shape[1]:
        raise InvalidParameterError(f"{path}: expected a square matrix, got shape {m.shape}")
    return m


def read_space_json(path: PathLike) -> NormedSpace:
    with _open_for_reading(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidParameterError(f"{path}: {exc}") from exc
    return space_from_dict(payload)


def write_space_json(path: PathLike, space: NormedSpace) -> None:
    with open(path, "w") as fh:
        json.dump(space_to_dict(space), fh, indent=2, sort_keys=True)
        fh.write("\n")
