"""Shared pytest fixtures for decolab tests."""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Callable, Dict

import pytest
from click.testing import CliRunner

# Ensure src/ is importable when running tests in isolation
PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_ROOT = PROJECT_ROOT / "src"
if str(SRC_ROOT) not in sys.path:
    sys.path.insert(0, str(SRC_ROOT))

from decolab.core.config import ScenarioConfig  # noqa: E402
from decolab.core.models import SpatialGrid  # noqa: E402
from decolab.core.states import build_gaussian_packet, cat_state, pure_density  # noqa: E402


def pytest_configure(config: pytest.Config) -> None:
    """Register the marker taxonomy."""
    markers = {
        "unit": "Unit tests (fast, isolated)",
        "integration": "Integration tests across modules",
        "contract": "Output file and JSON schema tests",
        "performance": "Wall-clock budget tests",
        "cli": "Command-line interface behaviour tests",
        "slow": "Slow running tests",
    }
    for name, description in markers.items():
        config.addinivalue_line("markers", f"{name}: {description}")


@pytest.fixture
def cli_runner() -> CliRunner:
    """Return a Click CLI runner for invoking decolab commands."""
    return CliRunner()


@pytest.fixture
def small_grid() -> SpatialGrid:
    """64-point grid on [-8, 8]."""
    return SpatialGrid(n_points=64, x_min=-8.0, x_max=8.0)


@pytest.fixture
def cat_grid() -> SpatialGrid:
    """256-point grid with spacing 1/8 so that +/-4 are grid points."""
    return SpatialGrid(n_points=256, x_min=-16.0, x_max=15.875)


@pytest.fixture
def gaussian_rho(small_grid: SpatialGrid):
    return pure_density(build_gaussian_packet(small_grid, 0.0, 1.0))


@pytest.fixture
def cat_rho(cat_grid: SpatialGrid):
    return pure_density(cat_state(cat_grid, 8.0, 1.0))


@pytest.fixture
def scenario_file(tmp_path: Path) -> Callable[[str], Path]:
    """Write scenario text to a temporary .cfg file."""
    def _writer(text: str, name: str = "scenario.cfg") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _writer


@pytest.fixture
def make_config(tmp_path: Path) -> Callable[..., ScenarioConfig]:
    """Factory for configs writing into the temporary directory."""
    def _factory(experiment: str, subdir: str = "run", **parameters) -> ScenarioConfig:
        return ScenarioConfig(experiment=experiment, parameters=parameters, output_dir=tmp_path / subdir)

    return _factory


@pytest.fixture
def load_json() -> Callable[[str], Dict[str, object]]:
    """Parse JSON content emitted by Rich's console.print_json."""
    def _loader(output: str) -> Dict[str, object]:
        lines = output.splitlines()
        start = next((i for i, line in enumerate(lines) if line.startswith("{")), None)
        if start is None:
            return {}
        return json.loads("\n".join(lines[start:]))

    return _loader
