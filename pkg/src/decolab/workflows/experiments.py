"""Experiment runners: build the physics objects from a config, run them and write CSV outputs."""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from ..core.config import ScenarioConfig
from ..core.measurement import coherence_length, position_distribution
from ..core.models import DensityMatrix, SpatialGrid, WaveFunction
from ..core.states import build_gaussian_packet, cat_state, pure_density
from ..core.units import CGS, NATURAL
from ..lib.tables import write_csv
from ..master.models import CaldeiraLeggettModel, FreeDecoherenceModel, IntegrationPlan
from ..master.relaxation import decoherence_relaxation_ratio, thermal_wavelength
from ..master.series import MasterRun, run_master_equation
from ..rates.gravity import GravityScenario, gravity_coherence_width, gravity_rate
from ..rates.presets import table1_generate
from ..rates.qed import (
    QedScenario,
    critical_field,
    qed_dominance_ratio,
    qed_pair_factor,
    qed_vacuum_factor,
    qed_vacuum_limit,
)
from ..rates.scattering import apply_spatial_decoherence
from ..wigner.export import write_wigner_csv, write_wigner_dump
from ..wigner.oscillator import oscillator_eigenstate
from ..wigner.transform import marginal_position, wigner_transform
from ..zeno.analytic import DecaySystem, classical_decay_survival, energy_variance, zeno_table
from ..zeno.chiral import ChiralModel, chiral_series, left_handed_density
from ..zeno.pointer import PointerModel, coupling_scan, evolve_pointer_model
from .registry import ExperimentResult, register_experiment


logger = logging.getLogger(__name__)


def _emit(
    cfg: ScenarioConfig,
    name: str,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    *,
    unit_system: str = NATURAL,
) -> Path:
    path = write_csv(cfg.output_dir / name, header, rows, cfg.metadata_lines(), unit_system=unit_system)
    logger.debug(f"Wrote {path}")
    return path


def _grid(params: dict) -> SpatialGrid:
    return SpatialGrid(n_points=params["n_points"], x_min=params["x_min"], x_max=params["x_max"])


def _plan(params: dict, scheme: str = "split-step") -> IntegrationPlan:
    return IntegrationPlan(
        dt=params["dt"],
        n_steps=params["n_steps"],
        record_every=params["record_every"],
        scheme=params.get("scheme", scheme),
    )


def _prepare_state(params: dict, grid: SpatialGrid) -> WaveFunction:
    state = params["state"]
    if state == "cat":
        return cat_state(grid, params["separation"], params["width"], params.get("momentum", 0.0))
    if state == "oscillator":
        return oscillator_eigenstate(grid, params["level"], params["omega"])
    return build_gaussian_packet(grid, params.get("center", 0.0), params["width"], params.get("momentum", 0.0))


def _density_rows(rho: DensityMatrix) -> Iterable[tuple[float, float, float]]:
    x = rho.grid.x
    magnitudes = np.abs(rho.elements)
    for i, xi in enumerate(x.tolist()):
        for j, xj in enumerate(x.tolist()):
            yield xi, xj, float(magnitudes[i, j])


def _master_diagnostics(run: MasterRun) -> dict:
    diagnostics = run.diagnostics()
    diagnostics["integration_time"] = run.wall_time
    return diagnostics


# ----------------------------------------------------------------------
# Spatial decoherence snapshots
# ----------------------------------------------------------------------
@register_experiment(
    "localize",
    "Damp the off-diagonal part of a cat or oscillator state by exp(-Lambda t (x - x')^2)",
    ["density_before.csv", "density_after.csv", "position.csv"],
)
def run_localize(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    grid = _grid(params)
    before = pure_density(_prepare_state(params, grid))
    after = apply_spatial_decoherence(before, params["lambda_t"], 1.0)

    outputs = [
        _emit(cfg, "density_before.csv", ("x", "x_prime", "abs_rho"), _density_rows(before)),
        _emit(cfg, "density_after.csv", ("x", "x_prime", "abs_rho"), _density_rows(after)),
        _emit(
            cfg,
            "position.csv",
            ("x", "before", "after"),
            zip(grid.x.tolist(), position_distribution(before).tolist(), position_distribution(after).tolist()),
        ),
    ]

    summary = {
        "coherence_length_before": coherence_length(before),
        "coherence_length_after": coherence_length(after),
        "purity_before": before.purity(),
        "purity_after": after.purity(),
    }
    if params["state"] == "cat":
        half = 0.5 * params["separation"]
        i, j = np.searchsorted(grid.x, [-half, half])
        summary["interference_damping"] = float(abs(after.elements[i, j]) / abs(before.elements[i, j]))

    diagnostics = {
        "trace_error": after.trace_error(),
        "hermiticity_residue": after.hermiticity_residue(),
        "position_drift": float(np.max(np.abs(position_distribution(after) - position_distribution(before)))),
    }
    return ExperimentResult(outputs=outputs, diagnostics=diagnostics, summary=summary)


@register_experiment(
    "wigner",
    "Wigner function of a state before and after spatial decoherence",
    ["wigner_before.csv", "wigner_after.csv", "wigner_before.wig", "wigner_after.wig"],
)
def run_wigner(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    grid = _grid(params)
    before = pure_density(_prepare_state(params, grid))
    after = apply_spatial_decoherence(before, params["lambda_t"], 1.0)
    w_before = wigner_transform(before)
    w_after = wigner_transform(after)

    metadata = cfg.metadata_lines()
    outputs = [
        write_wigner_csv(w_before, cfg.output_dir / "wigner_before.csv", metadata),
        write_wigner_csv(w_after, cfg.output_dir / "wigner_after.csv", metadata),
    ]
    if params["binary"]:
        outputs.append(write_wigner_dump(w_before, cfg.output_dir / "wigner_before.wig"))
        outputs.append(write_wigner_dump(w_after, cfg.output_dir / "wigner_after.wig"))

    marginal_error = float(np.max(np.abs(marginal_position(w_after) - position_distribution(after))))
    summary = {
        "min_before": w_before.min(),
        "min_after": w_after.min(),
        "norm_before": w_before.norm(),
        "norm_after": w_after.norm(),
        "variance_x_after": w_after.variance_x(),
        "variance_p_after": w_after.variance_p(),
    }
    return ExperimentResult(outputs=outputs, diagnostics={"marginal_error": marginal_error}, summary=summary)


# ----------------------------------------------------------------------
# Master-equation runs
# ----------------------------------------------------------------------
@register_experiment(
    "evolve-free",
    "Free particle under position-localising decoherence: coherence length over time",
    ["coherence.csv"],
)
def run_evolve_free(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    grid = _grid(params)
    model = FreeDecoherenceModel(mass=params["mass"], strength=params["lambda"])
    run = run_master_equation(model, pure_density(_prepare_state(params, grid)), _plan(params))

    outputs = [
        _emit(
            cfg,
            "coherence.csv",
            ("t", "coherence_length", "trace_error", "purity"),
            zip(run.times, run.coherence_lengths, run.trace_errors, run.purities),
        )
    ]
    summary = {
        "final_time": run.times[-1],
        "initial_coherence_length": run.coherence_lengths[0],
        "final_coherence_length": run.coherence_lengths[-1],
        "final_purity": run.purities[-1],
    }
    return ExperimentResult(outputs=outputs, diagnostics=_master_diagnostics(run), summary=summary)


@register_experiment(
    "evolve-cl",
    "Quantum Brownian motion of a moving packet: friction plus thermal decoherence",
    ["brownian.csv"],
)
def run_evolve_cl(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    grid = _grid(params)
    model = CaldeiraLeggettModel(mass=params["mass"], damping=params["gamma"], temperature=params["temperature"])
    psi = build_gaussian_packet(grid, params["center"], params["width"], params["momentum"])
    run = run_master_equation(model, pure_density(psi), _plan(params))

    outputs = [
        _emit(
            cfg,
            "brownian.csv",
            ("t", "mean_x", "mean_p", "coherence_length", "trace_error", "purity"),
            zip(run.times, run.mean_positions, run.mean_momenta, run.coherence_lengths, run.trace_errors, run.purities),
        )
    ]
    summary = {
        "strength": model.strength,
        "final_time": run.times[-1],
        "final_mean_p": run.mean_momenta[-1],
        "final_coherence_length": run.coherence_lengths[-1],
        "decoherence_relaxation_ratio": decoherence_relaxation_ratio(
            params["ratio_mass"], params["ratio_temperature"], params["ratio_dx"]
        ),
        "thermal_wavelength_cm": thermal_wavelength(params["ratio_mass"], params["ratio_temperature"]),
    }
    return ExperimentResult(outputs=outputs, diagnostics=_master_diagnostics(run), summary=summary)


# ----------------------------------------------------------------------
# Zeno effect
# ----------------------------------------------------------------------
@register_experiment(
    "zeno-analytic",
    "Survival probability under N ideal measurements next to classical decay",
    ["zeno.csv"],
)
def run_zeno_analytic(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    system = DecaySystem.two_level(params["coupling"])
    t = params["time"]
    table = zeno_table(system, t, params["n_max"])
    rows = [(n, p_n, classical_decay_survival(params["decay_rate"], t, n)) for n, p_n in table]

    outputs = [_emit(cfg, "zeno.csv", ("N", "P_N", "classical"), rows)]
    summary = {
        "energy_variance": energy_variance(system),
        "P_1": table[0][1],
        "P_n_max": table[-1][1],
        "classical": rows[0][2],
    }
    increasing = all(later > earlier for (_, earlier), (_, later) in zip(table, table[1:]))
    return ExperimentResult(outputs=outputs, diagnostics={"survival_increasing": increasing}, summary=summary)


@register_experiment(
    "zeno-pointer",
    "Two-level transition watched by a continuous pointer; optional coupling scan",
    ["pointer.csv | scan.csv"],
)
def run_zeno_pointer(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    model = PointerModel(
        transition=params["transition"],
        offset=params["offset"],
        meter_coupling=params["meter_coupling"],
        grid=_grid(params),
        pointer_width=params["pointer_width"],
    )

    if params["scan_gammas"]:
        scan = coupling_scan(
            model,
            params["scan_time"],
            params["scan_gammas"],
            dt=params["dt"],
            workers=params["workers"],
        )
        outputs = [_emit(cfg, "scan.csv", ("gamma", "P2_at_t"), scan)]
        populations = [p2 for _, p2 in scan]
        decreasing = all(later <= earlier for earlier, later in zip(populations, populations[1:]))
        summary = {"scan_time": params["scan_time"], "P2_first": populations[0], "P2_last": populations[-1]}
        return ExperimentResult(outputs=outputs, diagnostics={"monotone_decreasing": decreasing}, summary=summary)

    run = evolve_pointer_model(model, _plan(params))
    outputs = [_emit(cfg, "pointer.csv", ("t", "P2"), zip(run.times, run.upper_populations))]
    summary = {"final_time": run.times[-1], "final_P2": run.upper_populations[-1], "resolution_time": run.resolution_time}
    return ExperimentResult(outputs=outputs, diagnostics=run.diagnostics(), summary=summary)


@register_experiment(
    "chiral",
    "Left-handed population of a tunnelling chiral molecule under monitoring",
    ["chiral.csv"],
)
def run_chiral(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    model = ChiralModel(splitting=params["splitting"], monitoring_rate=params["monitoring_rate"])
    times = np.linspace(0.0, params["periods"] * model.period, params["n_samples"])
    series = chiral_series(model, left_handed_density(model.splitting), times.tolist())

    outputs = [_emit(cfg, "chiral.csv", ("t", "P_L"), series)]
    populations = [p_l for _, p_l in series]
    summary = {"period": model.period, "min_P_L": min(populations), "final_P_L": populations[-1]}
    if model.monitoring_rate > 0.0:
        summary["zeno_rate"] = model.splitting ** 2 / model.monitoring_rate
    return ExperimentResult(outputs=outputs, summary=summary)


# ----------------------------------------------------------------------
# Closed-form factors
# ----------------------------------------------------------------------
@register_experiment(
    "qed",
    "Vacuum-polarisation and pair-creation decoherence factors of a field superposition",
    ["qed.csv"],
)
def run_qed(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    base = QedScenario(
        charge=params["charge"], mass=params["mass"], field=params["field"], volume=params["volume"], time=0.0
    )
    e_c = critical_field(base.mass, base.charge)

    rows = []
    for t in params["times"]:
        scenario = base.at_time(t)
        ratio = qed_dominance_ratio(scenario) if base.field > e_c and t > 0.0 else None
        rows.append((t, qed_vacuum_factor(scenario), qed_pair_factor(scenario), ratio))

    outputs = [_emit(cfg, "qed.csv", ("t", "D_V", "D_PC", "ratio"), rows)]
    summary = {
        "critical_field": e_c,
        "pair_creation_regime": base.field > e_c,
        "vacuum_limit": qed_vacuum_limit(base),
    }
    return ExperimentResult(outputs=outputs, summary=summary)


@register_experiment(
    "gravity",
    "Width in g at which a surrounding gas decoheres a superposition of accelerations",
    ["gravity.csv"],
)
def run_gravity(cfg: ScenarioConfig) -> ExperimentResult:
    params = cfg.parameters
    scenario = GravityScenario(
        density=params["density"],
        particle_mass=params["particle_mass"],
        temperature=params["temperature"],
        box_size=params["box_size"],
        time=params["time"],
    )
    rate = gravity_rate(scenario)
    width = gravity_coherence_width(scenario, params["g_ref"])

    outputs = [_emit(cfg, "gravity.csv", ("rate", "dg_over_g"), [(rate, width)], unit_system=CGS)]
    return ExperimentResult(outputs=outputs, summary={"rate": rate, "dg_over_g": width})


@register_experiment(
    "table1",
    "Localisation rates for the preset environments and object sizes",
    ["table1.csv"],
)
def run_table1(cfg: ScenarioConfig) -> ExperimentResult:
    rows = table1_generate(cfg.parameters["presets"] or None)
    header = ("environment", "size_cm", "computed", "computed_log10", "paper_log10", "log10_deviation", "regime")
    outputs = [
        _emit(cfg, "table1.csv", header, ([row.to_dict()[column] for column in header] for row in rows), unit_system=CGS)
    ]
    deviations = [abs(row.log10_deviation) for row in rows]
    summary = {"cells": len(rows), "max_abs_log10_deviation": max(deviations)}
    return ExperimentResult(outputs=outputs, diagnostics={"within_two_decades": max(deviations) <= 2.0}, summary=summary)


def scalar_summary(summary: dict) -> dict:
    """Finite numeric summary values, in key order, for tabulating sweeps."""

    scalars = {}
    for key, value in summary.items():
        if isinstance(value, bool) or value is None:
            continue
        if isinstance(value, (int, float)) and math.isfinite(value):
            scalars[key] = value
    return scalars
