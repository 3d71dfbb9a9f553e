"""Experiment registry, scenario orchestration and run reports."""

from .orchestrator import ScenarioOrchestrator, run_scenario
from .registry import EXPERIMENT_REGISTRY, ExperimentDefinition, ExperimentResult, get_experiment
from .report import REPORT_NAME, RunReport

__all__ = [
    "EXPERIMENT_REGISTRY",
    "ExperimentDefinition",
    "ExperimentResult",
    "get_experiment",
    "ScenarioOrchestrator",
    "run_scenario",
    "RunReport",
    "REPORT_NAME",
]
