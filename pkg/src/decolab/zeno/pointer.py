"""Two-level system continuously monitored by a pointer with coupling gamma * p * sigma_z."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence

import numpy as np
from scipy import fft, linalg

from ..core.errors import BoundaryLeak
from ..core.models import SpatialGrid, WaveFunction
from ..core.states import BOUNDARY_AMPLITUDE_RATIO, build_gaussian_packet
from ..master.models import SPLIT_STEP, IntegrationPlan


logger = logging.getLogger(__name__)

RESOLUTION_OVERLAP = math.exp(-0.5)


@dataclass(frozen=True, slots=True, eq=False)
class PointerModel:
    """H = V (|1><2| + |2><1|) + E |2><2| + gamma p (|1><1| - |2><2|); the pointer has no kinetic term."""

    transition: float
    offset: float
    meter_coupling: float
    grid: SpatialGrid
    pointer_width: float = 1.0
    pointer: Optional[WaveFunction] = None

    def __post_init__(self) -> None:
        if self.transition < 0.0:
            raise ValueError(f"transition strength must be >= 0, got {self.transition}")
        if self.meter_coupling < 0.0:
            raise ValueError(f"meter coupling must be >= 0, got {self.meter_coupling}")
        if self.pointer is None:
            object.__setattr__(self, "pointer", build_gaussian_packet(self.grid, 0.0, self.pointer_width))
        elif self.pointer.grid != self.grid:
            raise ValueError("Pointer state must live on the model grid")

    def level_hamiltonian(self) -> np.ndarray:
        return np.array([[0.0, self.transition], [self.transition, self.offset]], dtype=complex)

    def with_coupling(self, meter_coupling: float) -> "PointerModel":
        return replace(self, meter_coupling=meter_coupling)


@dataclass(slots=True)
class PointerRun:
    times: List[float] = field(default_factory=list)
    upper_populations: List[float] = field(default_factory=list)
    norm_errors: List[float] = field(default_factory=list)
    branch_overlaps: List[float] = field(default_factory=list)
    truncated: bool = False
    leak_time: Optional[float] = None

    @property
    def resolution_time(self) -> Optional[float]:
        """First recorded time at which the pointer branches overlap less than e^-1/2."""

        for t, overlap in zip(self.times, self.branch_overlaps):
            if overlap < RESOLUTION_OVERLAP:
                return t
        return None

    @property
    def max_norm_error(self) -> float:
        return max(self.norm_errors, default=0.0)

    def diagnostics(self) -> dict:
        return {
            "records": len(self.times),
            "max_norm_error": self.max_norm_error,
            "boundary_leak": self.truncated,
            "leak_time": self.leak_time,
            "resolution_time": self.resolution_time,
        }


def branch_overlap(m: PointerModel, t: float) -> float:
    """|<ptr_1(t)|ptr_2(t)>| for pointer branches displaced by +/- gamma t."""

    weights = np.abs(fft.fft(m.pointer.amplitudes)) ** 2
    phases = np.exp(-2j * m.meter_coupling * t * m.grid.wave_numbers)
    return float(abs(np.sum(weights * phases)) / np.sum(weights))


def _edge_leaks(spectrum: np.ndarray) -> bool:
    density = np.sum(np.abs(fft.ifft(spectrum, axis=1)) ** 2, axis=0)
    return bool(max(density[0], density[-1]) >= BOUNDARY_AMPLITUDE_RATIO ** 2 * float(np.max(density)))


def evolve_pointer_model(m: PointerModel, plan: IntegrationPlan) -> PointerRun:
    """Strang-split evolution of the joint state, prepared in |1> with the pointer at rest.

    The pointer momentum is conserved, so the state is held in wave-number space:
    the level Hamiltonian acts as a 2x2 matrix and the meter coupling as a phase.
    """

    if plan.scheme != SPLIT_STEP:
        raise ValueError("The pointer model is integrated with the split-step scheme only")

    grid = m.grid
    k = grid.wave_numbers
    dt = plan.dt
    half_level = linalg.expm(-0.5j * dt * m.level_hamiltonian())
    meter = np.stack([np.exp(-1j * m.meter_coupling * k * dt), np.exp(1j * m.meter_coupling * k * dt)])

    spectrum = np.zeros((2, grid.n_points), dtype=complex)
    spectrum[0] = fft.fft(m.pointer.amplitudes)
    # Parseval: sum |fft(f)|^2 dx / N = integral |f|^2
    scale = grid.spacing / grid.n_points

    run = PointerRun()

    def record(t: float) -> None:
        populations = np.sum(np.abs(spectrum) ** 2, axis=1) * scale
        run.times.append(t)
        run.upper_populations.append(float(min(1.0, populations[1])))
        run.norm_errors.append(abs(float(populations.sum()) - 1.0))
        run.branch_overlaps.append(branch_overlap(m, t))

    record(0.0)
    for step in range(1, plan.n_steps + 1):
        spectrum = half_level @ spectrum
        spectrum = meter * spectrum
        spectrum = half_level @ spectrum
        if step % plan.record_every and step != plan.n_steps:
            continue
        t = step * dt
        if _edge_leaks(spectrum):
            run.truncated = True
            run.leak_time = t
            logger.warning(f"Pointer branch reached the grid edge at t={t:.6g} (gamma={m.meter_coupling:g})")
            break
        record(t)
    return run


def coupling_scan(
    m: PointerModel,
    t_fixed: float,
    gammas: Sequence[float],
    *,
    dt: float = 1.0e-3,
    workers: int = 4,
) -> List[tuple[float, float]]:
    """P_2(t_fixed) for each meter coupling, one worker per run; results keep input order."""

    values = [float(gamma) for gamma in gammas]
    if not values:
        raise ValueError("coupling_scan needs at least one gamma")
    if any(later < earlier for earlier, later in zip(values, values[1:])):
        raise ValueError("gamma list must be sorted")
    if not t_fixed > 0.0:
        raise ValueError(f"t_fixed must be > 0, got {t_fixed}")

    n_steps = max(1, int(round(t_fixed / dt)))
    plan = IntegrationPlan(dt=t_fixed / n_steps, n_steps=n_steps, record_every=n_steps)

    def final_population(gamma: float) -> tuple[float, float]:
        run = evolve_pointer_model(m.with_coupling(gamma), plan)
        if run.truncated:
            raise BoundaryLeak(f"Pointer reached the grid edge at t={run.leak_time:.6g} for gamma={gamma:g}")
        return gamma, run.upper_populations[-1]

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        return list(executor.map(final_population, values))
