"""Time steppers for the free decoherence and Caldeira-Leggett master equations."""

from __future__ import annotations

import numpy as np
from scipy import fft

from ..core.errors import DimensionMismatch, TraceDrift
from ..core.models import DensityMatrix, SpatialGrid
from ..core.units import NATURAL
from ..rates.scattering import damping_factor
from .models import (
    RK4,
    SPLIT_STEP,
    CaldeiraLeggettModel,
    FreeDecoherenceModel,
    MasterModel,
    check_stability,
)


STEP_TRACE_TOLERANCE = 1.0e-6


def laplacian(elements: np.ndarray, spacing: float, axis: int) -> np.ndarray:
    """Three-point Laplacian along one axis with zero values outside the grid."""

    moved = np.moveaxis(elements, axis, 0)
    result = -2.0 * moved
    result[1:] += moved[:-1]
    result[:-1] += moved[1:]
    return np.moveaxis(result / spacing ** 2, 0, axis)


def centered_difference(elements: np.ndarray, spacing: float, axis: int) -> np.ndarray:
    """Centred first derivative along one axis with zero values outside the grid."""

    moved = np.moveaxis(elements, axis, 0)
    result = np.zeros_like(moved)
    result[:-1] += moved[1:]
    result[1:] -= moved[:-1]
    return np.moveaxis(result / (2.0 * spacing), 0, axis)


def _rk4(rhs, elements: np.ndarray, dt: float) -> np.ndarray:
    k1 = rhs(elements)
    k2 = rhs(elements + 0.5 * dt * k1)
    k3 = rhs(elements + 0.5 * dt * k2)
    k4 = rhs(elements + dt * k3)
    return elements + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class MasterPropagator:
    """Advances rho(x, x') by a fixed step for one model on one grid.

    The split-step scheme applies the kinetic factor exactly in wave-number space
    between two half-step decoherence factors; friction, when present, is
    wrapped around the free step as two RK4 half steps on centred differences.
    """

    def __init__(self, model: MasterModel, grid: SpatialGrid, dt: float, scheme: str = SPLIT_STEP) -> None:
        if grid.unit_system != NATURAL or getattr(model, "unit_system", NATURAL) != NATURAL:
            raise ValueError("Master-equation integration runs in natural units only")
        check_stability(model, grid, dt, scheme)

        self.model = model
        self.grid = grid
        self.dt = dt
        self.scheme = scheme
        self.strength = model.strength
        self.damping = model.damping
        self._xi = grid.separation_matrix()

        if scheme == SPLIT_STEP:
            self._phase = np.exp(-0.5j * grid.wave_numbers ** 2 * dt / model.mass) if model.kinetic else None
            lambda_t = self.strength * dt
            if lambda_t == 0.0:
                self._decoherence = None
            elif model.kinetic:
                self._decoherence = damping_factor(grid, 0.5 * lambda_t)
            else:
                self._decoherence = damping_factor(grid, lambda_t)
        else:
            self._xi_squared = self._xi ** 2

    # ------------------------------------------------------------------
    # Right-hand sides
    # ------------------------------------------------------------------
    def _kinetic_rhs(self, elements: np.ndarray) -> np.ndarray:
        spacing = self.grid.spacing
        lap_x = laplacian(elements, spacing, axis=0)
        lap_xp = laplacian(elements, spacing, axis=1)
        return 0.5j / self.model.mass * (lap_x - lap_xp)

    def _friction_rhs(self, elements: np.ndarray) -> np.ndarray:
        spacing = self.grid.spacing
        d_xp = centered_difference(elements, spacing, axis=1)
        d_x = centered_difference(elements, spacing, axis=0)
        return self.damping * self._xi * (d_xp - d_x)

    def _full_rhs(self, elements: np.ndarray) -> np.ndarray:
        result = -self.strength * self._xi_squared * elements
        if self.model.kinetic:
            result = result + self._kinetic_rhs(elements)
        if self.damping > 0.0:
            result = result + self._friction_rhs(elements)
        return result

    # ------------------------------------------------------------------
    # Steps
    # ------------------------------------------------------------------
    def _kinetic(self, elements: np.ndarray) -> np.ndarray:
        phase = self._phase[:, None]
        left = fft.ifft(phase * fft.fft(elements, axis=0), axis=0)
        # rho U^dagger = (U (U rho)^dagger)^dagger
        return fft.ifft(phase * fft.fft(left.conj().T, axis=0), axis=0).conj().T

    def _free_step(self, elements: np.ndarray) -> np.ndarray:
        if not self.model.kinetic:
            return elements * self._decoherence if self._decoherence is not None else elements.copy()
        if self._decoherence is not None:
            elements = elements * self._decoherence
        elements = self._kinetic(elements)
        if self._decoherence is not None:
            elements = elements * self._decoherence
        return elements

    def advance(self, elements: np.ndarray) -> np.ndarray:
        if self.scheme == RK4:
            return _rk4(self._full_rhs, elements, self.dt)
        if self.damping == 0.0:
            return self._free_step(elements)
        half = 0.5 * self.dt
        elements = _rk4(self._friction_rhs, elements, half)
        elements = self._free_step(elements)
        return _rk4(self._friction_rhs, elements, half)

    def step(self, rho: DensityMatrix) -> DensityMatrix:
        if rho.grid != self.grid:
            raise DimensionMismatch("Density matrix grid does not match the propagator grid")
        advanced = DensityMatrix(elements=self.advance(rho.elements), grid=self.grid, label=rho.label)
        drift = advanced.trace_error()
        if drift > STEP_TRACE_TOLERANCE:
            raise TraceDrift(f"Trace drifted by {drift:.3e} in one step")
        return advanced


def _spatial_grid(rho: DensityMatrix) -> SpatialGrid:
    if rho.grid is None:
        raise DimensionMismatch("Master-equation steps need a density matrix on a spatial grid")
    return rho.grid


def step_free_decoherence(
    rho: DensityMatrix, model: FreeDecoherenceModel, dt: float, scheme: str = SPLIT_STEP
) -> DensityMatrix:
    """One step of the free master equation with localising decoherence."""

    return MasterPropagator(model, _spatial_grid(rho), dt, scheme).step(rho)


def step_caldeira_leggett(
    rho: DensityMatrix, model: CaldeiraLeggettModel, dt: float, scheme: str = SPLIT_STEP
) -> DensityMatrix:
    """One step of the Caldeira-Leggett equation; without friction it is the free step."""

    if model.damping == 0.0:
        return step_free_decoherence(rho, model.free_part(), dt, scheme)
    return MasterPropagator(model, _spatial_grid(rho), dt, scheme).step(rho)
