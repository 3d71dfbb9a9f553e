"""Scattering-induced decoherence: localisation rate and off-diagonal damping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.errors import DimensionMismatch, InvalidOverlap
from ..core.models import DensityMatrix, SpatialGrid


OVERLAP_SLACK = 1.0e-12


@dataclass(frozen=True, slots=True)
class ScatteringEnvironment:
    """Scatterers characterised by wave number, flux and effective cross-section (CGS)."""

    wave_number: float
    flux: float
    sigma_eff: float
    collision_rate: Optional[float] = None
    label: str = ""

    def __post_init__(self) -> None:
        for name in ("wave_number", "flux", "sigma_eff"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"{name} must be > 0, got {value}")
        if self.collision_rate is None:
            object.__setattr__(self, "collision_rate", self.flux * self.sigma_eff)
        elif not self.collision_rate > 0.0:
            raise ValueError(f"collision_rate must be > 0, got {self.collision_rate}")


def localization_rate(env: ScatteringEnvironment) -> float:
    """Lambda = k^2 * flux * sigma_eff."""

    return env.wave_number ** 2 * env.flux * env.sigma_eff


def _check_overlap(overlap: complex) -> complex:
    value = complex(overlap)
    if abs(value) > 1.0 + OVERLAP_SLACK:
        raise InvalidOverlap(f"|overlap| = {abs(value):.6g} exceeds 1")
    return value


def offdiag_decay_rate(collision_rate: float, overlap: complex) -> float:
    """Magnitude decay rate Gamma * (1 - Re overlap) of an off-diagonal element."""

    value = _check_overlap(overlap)
    return collision_rate * (1.0 - value.real)


def offdiag_phase_rate(collision_rate: float, overlap: complex) -> float:
    """Imaginary part of the complex rate; rotates the off-diagonal phase."""

    value = _check_overlap(overlap)
    return -collision_rate * value.imag


def decay_offdiagonal(element: complex, collision_rate: float, overlap: complex, t: float) -> complex:
    value = _check_overlap(overlap)
    rate = collision_rate * (1.0 - value)
    return complex(element) * complex(np.exp(-rate * t))


def damping_factor(grid: SpatialGrid, lambda_t: float) -> np.ndarray:
    """exp(-Lambda t (x - x')^2) over the grid; exactly 1 on the diagonal."""

    return np.exp(-lambda_t * grid.separation_matrix() ** 2)


def apply_spatial_decoherence(rho: DensityMatrix, strength: float, t: float) -> DensityMatrix:
    """Damp the off-diagonal elements of a spatial density matrix for time t."""

    if not rho.is_spatial:
        raise DimensionMismatch("apply_spatial_decoherence needs a density matrix on a spatial grid")
    lambda_t = strength * t
    if lambda_t < 0.0:
        raise ValueError(f"Lambda*t must be >= 0, got {lambda_t}")
    if lambda_t == 0.0:
        return rho.copy()
    return DensityMatrix(elements=rho.elements * damping_factor(rho.grid, lambda_t), grid=rho.grid)
