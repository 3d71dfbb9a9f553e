"""Run reports: scenario echo, timing, diagnostics and the output manifest."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

import psutil
import yaml

from ..core.errors import StorageError


REPORT_NAME = "run_report.json"

logger = logging.getLogger(__name__)


def _memory_usage_mb() -> Optional[float]:
    """Resident memory of this process in MB."""

    try:
        return psutil.Process().memory_info().rss / 1024 / 1024
    except (psutil.Error, OSError) as exc:
        logger.warning(f"Failed to get memory usage: {exc}")
        return None


def _plain(value: Any) -> Any:
    """JSON-safe copy: numpy scalars to Python numbers, non-finite floats to strings."""

    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


@dataclass
class RunReport:
    """Outcome of one scenario run."""

    experiment: str
    scenario: Dict[str, Any]
    output_dir: Path
    outputs: List[str] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)
    members: List[Dict[str, Any]] = field(default_factory=list)
    started_at: Optional[datetime] = None
    wall_time: Optional[float] = None
    memory_mb: Optional[float] = None

    def capture_memory(self) -> None:
        self.memory_mb = _memory_usage_mb()

    def missing_outputs(self) -> List[str]:
        return [name for name in self.outputs if not (self.output_dir / name).exists()]

    # ------------------------------------------------------------------
    # Serialization helpers
    # ------------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        return _plain(
            {
                "experiment": self.experiment,
                "scenario": self.scenario,
                "output_dir": str(self.output_dir),
                "outputs": list(self.outputs),
                "diagnostics": self.diagnostics,
                "summary": self.summary,
                "members": self.members,
                "started_at": self.started_at.isoformat() if self.started_at else None,
                "wall_time": self.wall_time,
                "memory_mb": self.memory_mb,
            }
        )

    def save(self, file_path: Optional[str | Path] = None) -> Path:
        target = Path(file_path) if file_path else self.output_dir / REPORT_NAME
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            with target.open("w", encoding="utf-8") as handle:
                json.dump(self.to_dict(), handle, indent=2)
        except OSError as exc:
            raise StorageError(f"Cannot write run report {target}: {exc}") from exc
        return target

    def to_yaml(self, file_path: str | Path) -> None:
        with Path(file_path).open("w", encoding="utf-8") as handle:
            yaml.safe_dump(self.to_dict(), handle, default_flow_style=False, sort_keys=False)

    @classmethod
    def load(cls, file_path: str | Path) -> "RunReport":
        path = Path(file_path)
        try:
            with path.open("r", encoding="utf-8") as handle:
                data = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise StorageError(f"Cannot read run report {path}: {exc}") from exc
        return cls(
            experiment=data["experiment"],
            scenario=data.get("scenario", {}),
            output_dir=Path(data["output_dir"]),
            outputs=data.get("outputs", []),
            diagnostics=data.get("diagnostics", {}),
            summary=data.get("summary", {}),
            members=data.get("members", []),
            started_at=datetime.fromisoformat(data["started_at"]) if data.get("started_at") else None,
            wall_time=data.get("wall_time"),
            memory_mb=data.get("memory_mb"),
        )


def utc_now() -> datetime:
    return datetime.now(timezone.utc)
