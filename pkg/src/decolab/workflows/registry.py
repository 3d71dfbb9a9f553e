"""Experiment definitions and the registry the CLI and orchestrator dispatch through."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List

from ..core.config import ScenarioConfig


@dataclass
class ExperimentResult:
    """What a runner hands back: written files, invariant diagnostics and scalar summary values."""

    outputs: List[Path] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)
    members: List[Dict[str, Any]] = field(default_factory=list)


Runner = Callable[[ScenarioConfig], ExperimentResult]


@dataclass
class ExperimentDefinition:
    tag: str
    description: str
    runner: Runner
    outputs: List[str] = field(default_factory=list)


# Registry of available experiments
EXPERIMENT_REGISTRY: Dict[str, ExperimentDefinition] = {}


def register_experiment(tag: str, description: str, outputs: List[str]) -> Callable[[Runner], Runner]:
    """Decorator adding a runner to the registry under its experiment tag."""

    def decorator(runner: Runner) -> Runner:
        if tag in EXPERIMENT_REGISTRY:
            raise ValueError(f"Experiment '{tag}' is already registered")
        EXPERIMENT_REGISTRY[tag] = ExperimentDefinition(tag=tag, description=description, runner=runner, outputs=outputs)
        return runner

    return decorator


def get_experiment(tag: str) -> ExperimentDefinition:
    try:
        return EXPERIMENT_REGISTRY[tag]
    except KeyError as exc:
        raise KeyError(f"No experiment registered under '{tag}'") from exc


# Import runners to populate registry
from . import experiments  # noqa: E402,F401
