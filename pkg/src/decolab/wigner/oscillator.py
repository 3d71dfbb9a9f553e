"""Harmonic-oscillator eigenstates and their decohered phase-space pictures."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ..core.errors import GridTooNarrow
from ..core.models import DensityMatrix, SpatialGrid, WaveFunction
from ..core.states import pure_density
from ..rates.scattering import apply_spatial_decoherence
from .transform import WignerFunction, wigner_transform


logger = logging.getLogger(__name__)

EDGE_AMPLITUDE_RATIO = 1.0e-8
DEFAULT_DEMO_GRID = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)


def hermite_functions(x: np.ndarray, n_max: int, omega: float = 1.0) -> np.ndarray:
    """Rows 0..n_max of the normalised Hermite functions (m = hbar = 1).

    Built with the three-term recurrence on the normalised functions, which
    stays finite where factorial formulas overflow.
    """

    if n_max < 0:
        raise ValueError(f"n must be >= 0, got {n_max}")
    if not omega > 0.0:
        raise ValueError(f"omega must be > 0, got {omega}")

    xi = np.sqrt(omega) * np.asarray(x, dtype=float)
    table = np.empty((n_max + 1, xi.size))
    table[0] = (omega / np.pi) ** 0.25 * np.exp(-0.5 * xi ** 2)
    if n_max >= 1:
        table[1] = np.sqrt(2.0) * xi * table[0]
    for k in range(1, n_max):
        table[k + 1] = np.sqrt(2.0 / (k + 1)) * xi * table[k] - np.sqrt(k / (k + 1)) * table[k - 1]
    return table


def oscillator_eigenstate(grid: SpatialGrid, n: int, omega: float = 1.0) -> WaveFunction:
    """Level n of the oscillator with frequency omega, normalised on the grid."""

    amplitudes = hermite_functions(grid.x, n, omega)[n]
    peak = float(np.max(np.abs(amplitudes)))
    edge = max(abs(amplitudes[0]), abs(amplitudes[-1]))
    if edge >= EDGE_AMPLITUDE_RATIO * peak:
        raise GridTooNarrow(
            f"Level {n} reaches the grid edge (edge/peak = {edge / peak:.2e}); widen [{grid.x_min}, {grid.x_max}]"
        )
    return WaveFunction.normalized(grid, amplitudes)


def decohered_oscillator_demo(
    n: int,
    lambda_t: float,
    grid: Optional[SpatialGrid] = None,
    omega: float = 1.0,
) -> tuple[DensityMatrix, WignerFunction]:
    """Damp the off-diagonal part of the level-n density matrix and transform it."""

    grid = grid or DEFAULT_DEMO_GRID
    rho = pure_density(oscillator_eigenstate(grid, n, omega))
    damped = apply_spatial_decoherence(rho, lambda_t, 1.0)
    logger.debug(f"Oscillator demo n={n} lambda_t={lambda_t:g} purity={damped.purity():.6g}")
    return damped, wigner_transform(damped)
