#!/usr/bin/env python3
"""decolab CLI - scenario-driven decoherence experiments."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .. import __version__
from ..core.config import ScenarioConfig
from ..core.errors import DecolabError, ValidationError
from ..workflows import EXPERIMENT_REGISTRY, RunReport, run_scenario
from ..workflows.registry import ExperimentDefinition
from ..workflows.report import REPORT_NAME
from .scenario_parser import parse_sections, scenario_path, shipped_scenarios


console = Console()


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s [%(levelname)s] %(message)s")


def _format_number(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return "-" if value is None else str(value)


def _render_scenarios() -> None:
    table = Table(title="Shipped Scenarios")
    table.add_column("Name", style="cyan")
    table.add_column("Experiment", style="green")
    table.add_column("Path", style="white", overflow="fold")
    for path in shipped_scenarios():
        experiment = parse_sections(path.read_text(encoding="utf-8"))[None].get("experiment", "?")
        table.add_row(path.stem, experiment, str(path))
    console.print(table)


def _render_report(report: RunReport) -> None:
    overview = Table(title=f"Run {report.experiment}")
    overview.add_column("Property", style="cyan")
    overview.add_column("Value", style="white", overflow="fold")
    overview.add_row("Output directory", str(report.output_dir))
    overview.add_row("Wall time", f"{report.wall_time:.3f}s" if report.wall_time is not None else "-")
    overview.add_row("Memory", f"{report.memory_mb:.1f} MB" if report.memory_mb is not None else "-")
    overview.add_row("Files", ", ".join(report.outputs) or "-")
    console.print(overview)

    for title, values in (("Summary", report.summary), ("Diagnostics", report.diagnostics)):
        if not values:
            continue
        table = Table(title=title)
        table.add_column("Name", style="cyan")
        table.add_column("Value", justify="right")
        for key, value in values.items():
            table.add_row(key, _format_number(value))
        console.print(table)

    if report.members:
        members = Table(title="Sweep Members")
        members.add_column("Value", justify="right")
        members.add_column("Directory")
        members.add_column("Status")
        for member in report.members:
            style = "green" if member["status"] == "completed" else "red"
            members.add_row(_format_number(member["value"]), member["output_dir"], f"[{style}]{member['status']}[/{style}]")
        console.print(members)


def _load_scenario(
    tag: str,
    config_file: Optional[Path],
    scenario: Optional[str],
    output_dir: Optional[Path],
) -> ScenarioConfig:
    if config_file and scenario:
        raise click.UsageError("Use either --config or --scenario, not both")
    if config_file or scenario:
        cfg = ScenarioConfig.from_file(config_file or scenario_path(scenario))
        if cfg.experiment != tag:
            raise ValidationError("experiment", f"scenario is a '{cfg.experiment}' run, not '{tag}'")
    else:
        cfg = ScenarioConfig(experiment=tag)
    return cfg.with_output_dir(output_dir) if output_dir else cfg


@click.group(invoke_without_command=True)
@click.option("--verbose", is_flag=True, help="Enable verbose logging")
@click.option("--list-scenarios", is_flag=True, help="List the shipped scenario files and exit")
@click.version_option(__version__, prog_name="decolab")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, list_scenarios: bool) -> None:
    """decolab runs decoherence experiments from scenario files.

    Quick start
      decolab --list-scenarios
      decolab table1 --scenario table1
      decolab evolve-free --scenario fig5 --out runs/fig5

    Every run writes CSV files with a commented metadata header and a
    run_report.json beside them. Exit codes: 2 configuration, 3 numerics, 4 I/O.
    """

    _configure_logging(verbose)
    ctx.obj = {"verbose": verbose}

    if list_scenarios:
        _render_scenarios()
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        console.print(ctx.get_help())


def _experiment_command(definition: ExperimentDefinition) -> click.Command:
    tag = definition.tag

    @click.command(name=tag, help=f"{definition.description}.")
    @click.option("--config", "config_file", type=click.Path(path_type=Path, dir_okay=False), help="Scenario file")
    @click.option("--scenario", help="Name of a shipped scenario (see --list-scenarios)")
    @click.option("--out", "output_dir", type=click.Path(path_type=Path, file_okay=False), help="Output directory")
    @click.option("--format", "output_format", default="table", type=click.Choice(["table", "json"]))
    @click.pass_context
    def command(
        ctx: click.Context,
        config_file: Optional[Path],
        scenario: Optional[str],
        output_dir: Optional[Path],
        output_format: str,
    ) -> None:
        try:
            cfg = _load_scenario(tag, config_file, scenario, output_dir)
            if output_format == "table":
                console.print(Panel.fit(f"Running {tag} -> {cfg.output_dir}", style="cyan"))
            report = run_scenario(cfg)
        except DecolabError as exc:
            console.print(f"{type(exc).__name__}: {exc}", style="red")
            ctx.exit(exc.exit_code)

        if output_format == "json":
            console.print_json(data=report.to_dict())
            return
        _render_report(report)

    return command


@cli.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--format", "output_format", default="table", type=click.Choice(["table", "json"]))
@click.pass_context
def report(ctx: click.Context, path: Path, output_format: str) -> None:
    """Show a saved run report (a run_report.json or the directory holding one)."""

    target = path / REPORT_NAME if path.is_dir() else path
    try:
        saved = RunReport.load(target)
    except DecolabError as exc:
        console.print(f"{type(exc).__name__}: {exc}", style="red")
        ctx.exit(exc.exit_code)

    if output_format == "json":
        console.print_json(data=saved.to_dict())
        return
    _render_report(saved)
    missing = saved.missing_outputs()
    if missing:
        console.print(f"Missing outputs: {', '.join(missing)}", style="yellow")


for _definition in EXPERIMENT_REGISTRY.values():
    cli.add_command(_experiment_command(_definition))


if __name__ == "__main__":
    cli()
