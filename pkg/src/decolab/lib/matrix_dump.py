"""Compact binary dump of real matrices: one JSON header line, then little-endian float64."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Sequence

import numpy as np

from ..core.errors import StorageError


DUMP_FORMAT = "decolab-matrix/v1"
DUMP_DTYPE = "<f8"


def write_matrix_dump(
    path: str | Path,
    values: np.ndarray,
    *,
    axes: Sequence[str],
    origins: Sequence[float],
    spacings: Sequence[float],
    unit_system: str = "natural",
) -> Path:
    matrix = np.ascontiguousarray(values, dtype=DUMP_DTYPE)
    if matrix.ndim != len(axes) or len(origins) != matrix.ndim or len(spacings) != matrix.ndim:
        raise ValueError("axes, origins and spacings must have one entry per matrix dimension")

    header = {
        "axes": list(axes),
        "dtype": DUMP_DTYPE,
        "format": DUMP_FORMAT,
        "origins": [float(value) for value in origins],
        "shape": list(matrix.shape),
        "spacings": [float(value) for value in spacings],
        "unit_system": unit_system,
    }
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("wb") as handle:
            handle.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
            handle.write(matrix.tobytes(order="C"))
    except OSError as exc:
        raise StorageError(f"Cannot write {target}: {exc}") from exc
    return target


def read_matrix_dump(path: str | Path) -> tuple[Dict[str, Any], np.ndarray]:
    target = Path(path)
    try:
        with target.open("rb") as handle:
            header_line = handle.readline()
            payload = handle.read()
    except OSError as exc:
        raise StorageError(f"Cannot read {target}: {exc}") from exc

    try:
        header = json.loads(header_line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise StorageError(f"{target} does not start with a JSON header line") from exc
    if header.get("format") != DUMP_FORMAT:
        raise StorageError(f"{target} has unsupported format '{header.get('format')}'")

    shape = tuple(header["shape"])
    values = np.frombuffer(payload, dtype=header["dtype"])
    if values.size != int(np.prod(shape)):
        raise StorageError(f"{target} holds {values.size} values, header expects shape {shape}")
    return header, values.reshape(shape).copy()
