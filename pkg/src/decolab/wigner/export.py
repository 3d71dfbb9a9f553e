"""Writers for Wigner functions: gridded CSV and binary matrix dumps."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..lib.matrix_dump import write_matrix_dump
from ..lib.tables import Metadata, write_csv
from .transform import WignerFunction


def write_wigner_csv(w: WignerFunction, path: str | Path, metadata: Metadata = ()) -> Path:
    """Rows (x, p, W) with p varying fastest."""

    x = np.repeat(w.x, w.momenta.size)
    p = np.tile(w.momenta, w.x.size)
    rows = zip(x.tolist(), p.tolist(), w.values.ravel().tolist())
    return write_csv(path, ("x", "p", "W"), rows, metadata, unit_system=w.grid.unit_system)


def write_wigner_dump(w: WignerFunction, path: str | Path) -> Path:
    return write_matrix_dump(
        path,
        w.values,
        axes=("x", "p"),
        origins=(w.grid.x_min, float(w.momenta[0])),
        spacings=(w.grid.spacing, w.dp),
        unit_system=w.grid.unit_system,
    )
