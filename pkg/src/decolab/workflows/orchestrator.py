"""Scenario orchestrator.

Dispatches validated configs to registered runners, times them and persists run reports.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

from ..core.config import ScenarioConfig, _format_value
from ..core.errors import ConfigError, DecolabError
from ..lib.tables import write_csv
from .experiments import scalar_summary
from .registry import ExperimentResult, get_experiment, register_experiment
from .report import RunReport, utc_now


class ScenarioOrchestrator:
    """Runs scenarios and writes one run_report.json per output directory."""

    def __init__(self, save_reports: bool = True) -> None:
        self.save_reports = save_reports
        self.logger = logging.getLogger(__name__)

    def run(self, cfg: ScenarioConfig) -> RunReport:
        """Execute one scenario; module errors are re-raised with the experiment tag as context."""

        definition = get_experiment(cfg.experiment)
        report = RunReport(
            experiment=cfg.experiment,
            scenario=cfg.to_dict(),
            output_dir=cfg.output_dir,
            started_at=utc_now(),
        )
        self.logger.info(f"Starting {cfg.experiment} run in {cfg.output_dir}")
        started = time.perf_counter()

        try:
            result = definition.runner(cfg)
        except DecolabError as exc:
            self.logger.error(f"{cfg.experiment} failed: {exc}")
            raise exc.with_context(cfg.experiment)
        except ValueError as exc:
            self.logger.error(f"{cfg.experiment} rejected its parameters: {exc}")
            raise ConfigError(f"{cfg.experiment}: {exc}") from exc

        report.wall_time = time.perf_counter() - started
        report.outputs = [path.relative_to(cfg.output_dir).as_posix() for path in result.outputs]
        report.diagnostics = result.diagnostics
        report.summary = result.summary
        report.members = result.members
        report.capture_memory()

        missing = report.missing_outputs()
        if missing:
            self.logger.warning(f"Outputs listed but not found: {', '.join(missing)}")
        if self.save_reports:
            report.save()
        self.logger.info(f"Finished {cfg.experiment} in {report.wall_time:.3f}s ({len(report.outputs)} files)")
        return report

    def sweep(self, cfg: ScenarioConfig) -> ExperimentResult:
        """Run every sweep member on a bounded worker pool and tabulate their summaries."""

        members = cfg.member_configs()
        key = cfg.parameters["key"]
        workers = min(cfg.parameters["workers"], len(members))
        self.logger.info(f"Sweeping {cfg.base.experiment}.{key} over {len(members)} values with {workers} workers")

        def run_member(member: ScenarioConfig) -> tuple[Optional[RunReport], Optional[DecolabError]]:
            try:
                return self.run(member), None
            except DecolabError as exc:
                self.logger.warning(f"Sweep member {member.output_dir.name} failed: {exc}")
                return None, exc

        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(run_member, members))

        columns: List[str] = []
        for member_report, _ in outcomes:
            if member_report is not None:
                columns.extend(name for name in scalar_summary(member_report.summary) if name not in columns)

        rows = []
        listing: List[Dict[str, Any]] = []
        for value, member, (member_report, error) in zip(cfg.parameters["values"], members, outcomes):
            scalars = scalar_summary(member_report.summary) if member_report is not None else {}
            rows.append([value, *(scalars.get(name) for name in columns)])
            listing.append(
                {
                    "value": value,
                    "output_dir": member.output_dir.name,
                    "status": "completed" if error is None else "failed",
                    "error": str(error) if error is not None else None,
                }
            )

        metadata = cfg.metadata_lines()
        path = write_csv(cfg.output_dir / "sweep.csv", ["value", *columns], rows, metadata)

        # Succeeded members keep their outputs; the first failure decides the exit code
        for value, (_, error) in zip(cfg.parameters["values"], outcomes):
            if error is not None:
                raise error.with_context(f"{key}={_format_value(value)}")
        return ExperimentResult(
            outputs=[path],
            diagnostics={"members": len(members)},
            summary={"key": key, "base": cfg.base.experiment},
            members=listing,
        )


@register_experiment(
    "sweep",
    "Run a base experiment once per value of one numeric parameter",
    ["sweep.csv"],
)
def run_sweep(cfg: ScenarioConfig) -> ExperimentResult:
    return ScenarioOrchestrator().sweep(cfg)


def run_scenario(cfg: ScenarioConfig) -> RunReport:
    """Run a validated scenario and persist its report beside the outputs."""

    return ScenarioOrchestrator().run(cfg)
