"""Driving master-equation runs and collecting recorded diagnostics."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy import linalg

from ..core.errors import BoundaryLeak
from ..core.measurement import coherence_length, expectation_momentum, expectation_position
from ..core.models import DensityMatrix, WaveFunction
from ..core.states import BOUNDARY_AMPLITUDE_RATIO, pure_density
from .integrators import MasterPropagator
from .models import IntegrationPlan, MasterModel


logger = logging.getLogger(__name__)

TRUNCATE = "truncate"
RAISE = "raise"


@dataclass(slots=True)
class MasterRun:
    """Recorded diagnostics of one master-equation run."""

    times: List[float] = field(default_factory=list)
    coherence_lengths: List[float] = field(default_factory=list)
    trace_errors: List[float] = field(default_factory=list)
    purities: List[float] = field(default_factory=list)
    hermiticity_residues: List[float] = field(default_factory=list)
    mean_positions: List[float] = field(default_factory=list)
    mean_momenta: List[float] = field(default_factory=list)
    truncated: bool = False
    leak_time: Optional[float] = None
    final: Optional[DensityMatrix] = None
    min_eigenvalue: Optional[float] = None
    wall_time: float = 0.0

    def record(self, t: float, rho: DensityMatrix) -> None:
        self.times.append(t)
        self.coherence_lengths.append(coherence_length(rho))
        self.trace_errors.append(rho.trace_error())
        self.purities.append(rho.purity())
        self.hermiticity_residues.append(rho.hermiticity_residue())
        self.mean_positions.append(expectation_position(rho))
        self.mean_momenta.append(expectation_momentum(rho))

    def __len__(self) -> int:
        return len(self.times)

    @property
    def max_trace_error(self) -> float:
        return max(self.trace_errors, default=0.0)

    @property
    def max_hermiticity_residue(self) -> float:
        return max(self.hermiticity_residues, default=0.0)

    def purity_non_increasing(self, slack: float = 1.0e-12) -> bool:
        return all(later <= earlier + slack for earlier, later in zip(self.purities, self.purities[1:]))

    def diagnostics(self) -> Dict[str, Any]:
        return {
            "records": len(self),
            "max_trace_error": self.max_trace_error,
            "max_hermiticity_residue": self.max_hermiticity_residue,
            "purity_non_increasing": self.purity_non_increasing(),
            "boundary_leak": self.truncated,
            "leak_time": self.leak_time,
            "min_eigenvalue": self.min_eigenvalue,
        }

    def coherence_series(self) -> List[tuple[float, float]]:
        return list(zip(self.times, self.coherence_lengths))


def boundary_leaks(rho: DensityMatrix) -> bool:
    """True when the amplitude on either grid edge reaches 1e-6 of its peak."""

    density = np.abs(rho.diagonal())
    peak = float(np.max(density))
    return bool(max(density[0], density[-1]) >= BOUNDARY_AMPLITUDE_RATIO ** 2 * peak)


def smallest_eigenvalue(rho: DensityMatrix) -> float:
    """Lowest eigenvalue of rho (spacing weighted); negative values flag lost positivity."""

    hermitian = 0.5 * (rho.elements + rho.elements.conj().T) * rho.weight
    return float(linalg.eigvalsh(hermitian)[0])


def run_master_equation(
    model: MasterModel,
    rho0: DensityMatrix,
    plan: IntegrationPlan,
    *,
    on_leak: str = TRUNCATE,
) -> MasterRun:
    """Integrate rho0 under the model and record diagnostics every plan.record_every steps.

    A boundary leak ends the run: the partial series is returned flagged, or
    BoundaryLeak is raised when on_leak is "raise".
    """

    if on_leak not in (TRUNCATE, RAISE):
        raise ValueError(f"on_leak must be '{TRUNCATE}' or '{RAISE}', got '{on_leak}'")
    if rho0.grid is None:
        raise ValueError("run_master_equation needs a density matrix on a spatial grid")

    started = time.perf_counter()
    propagator = MasterPropagator(model, rho0.grid, plan.dt, plan.scheme)
    run = MasterRun()
    rho = rho0.copy()
    run.record(0.0, rho)

    for step in range(1, plan.n_steps + 1):
        rho = propagator.step(rho)
        if step % plan.record_every and step != plan.n_steps:
            continue
        t = step * plan.dt
        if boundary_leaks(rho):
            run.truncated = True
            run.leak_time = t
            logger.warning(f"Boundary leak at t={t:.6g}; series truncated after {len(run)} records")
            if on_leak == RAISE:
                raise BoundaryLeak(f"Density reached the grid edge at t={t:.6g}")
            break
        run.record(t, rho)
        logger.debug(
            f"t={t:.6g} coherence={run.coherence_lengths[-1]:.6g} "
            f"trace_error={run.trace_errors[-1]:.3e} purity={run.purities[-1]:.6g}"
        )

    run.final = rho
    run.min_eigenvalue = smallest_eigenvalue(rho)
    if run.min_eigenvalue < -1.0e-8:
        logger.warning(f"Density matrix lost positivity: smallest eigenvalue {run.min_eigenvalue:.3e}")
    run.wall_time = time.perf_counter() - started
    return run


def coherence_length_series(model: MasterModel, psi0: WaveFunction, plan: IntegrationPlan) -> MasterRun:
    """Evolve a pure initial state and record the coherence length (plus diagnostics)."""

    return run_master_equation(model, pure_density(psi0), plan)
