"""CSV emitter with a commented metadata preamble."""

from __future__ import annotations

import csv
import numbers
from pathlib import Path
from typing import Any, Iterable, Sequence, Tuple

from .. import __version__
from ..core.errors import StorageError


FLOAT_FORMAT = "%.12e"

Metadata = Sequence[Tuple[str, str]]


def format_cell(value: Any) -> str:
    """Fixed textual form of one CSV cell; floats always use %.12e."""

    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return FLOAT_FORMAT % float(value)
    if value is None:
        return ""
    return str(value)


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    metadata: Metadata = (),
    *,
    unit_system: str = "natural",
) -> Path:
    """Write `# key = value` metadata lines, one header line and the formatted rows."""

    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8", newline="") as handle:
            handle.write(f"# version = {__version__}\n")
            handle.write(f"# unit_system = {unit_system}\n")
            for key, value in metadata:
                handle.write(f"# {key} = {value}\n")
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                if len(row) != len(header):
                    raise ValueError(f"Row has {len(row)} cells, header has {len(header)}")
                writer.writerow([format_cell(value) for value in row])
    except OSError as exc:
        raise StorageError(f"Cannot write {target}: {exc}") from exc
    return target


def read_csv(path: str | Path) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Return (metadata, header, rows) of a file written by write_csv."""

    target = Path(path)
    try:
        lines = target.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise StorageError(f"Cannot read {target}: {exc}") from exc

    metadata: dict[str, str] = {}
    body_start = 0
    for index, line in enumerate(lines):
        if not line.startswith("#"):
            body_start = index
            break
        key, _, value = line[1:].partition("=")
        metadata[key.strip()] = value.strip()
    else:
        body_start = len(lines)

    records = list(csv.reader(lines[body_start:]))
    if not records:
        return metadata, [], []
    return metadata, records[0], records[1:]
