"""Wave-packet and density-matrix constructors."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import BoundaryLeak, GridMismatch, GridTooCoarse, ZeroNorm
from .models import DensityMatrix, SpatialGrid, WaveFunction


BOUNDARY_AMPLITUDE_RATIO = 1.0e-6


def build_gaussian_packet(
    grid: SpatialGrid,
    center: float,
    width: float,
    momentum: float = 0.0,
) -> WaveFunction:
    """Normalised Gaussian exp(-(x-center)^2/(4 width^2) + i momentum x)."""

    if width <= 2.0 * grid.spacing:
        raise GridTooCoarse(
            f"Packet width {width} must exceed twice the grid spacing ({grid.spacing:.4g})"
        )

    x = grid.x
    envelope = np.exp(-((x - center) ** 2) / (4.0 * width ** 2))
    boundary = max(envelope[0], envelope[-1])
    if boundary >= BOUNDARY_AMPLITUDE_RATIO * np.max(envelope):
        raise BoundaryLeak(
            f"Packet centred at {center} with width {width} is not contained in [{grid.x_min}, {grid.x_max}]"
        )
    return WaveFunction.normalized(grid, envelope * np.exp(1j * momentum * x))


def superpose(a: WaveFunction, b: WaveFunction, c1: complex, c2: complex) -> WaveFunction:
    """Normalised c1*a + c2*b."""

    if a.grid != b.grid:
        raise GridMismatch("Cannot superpose wave functions defined on different grids")
    combined = c1 * a.amplitudes + c2 * b.amplitudes
    norm = float(np.sqrt(np.sum(np.abs(combined) ** 2) * a.grid.spacing))
    if norm < 1.0e-12:
        raise ZeroNorm(f"Superposition has vanishing norm ({norm:.3e})")
    return WaveFunction(grid=a.grid, amplitudes=combined / norm)


def cat_state(grid: SpatialGrid, separation: float, width: float, momentum: float = 0.0) -> WaveFunction:
    """Equal-weight superposition of packets centred at +/- separation/2."""

    left = build_gaussian_packet(grid, -0.5 * separation, width, momentum)
    right = build_gaussian_packet(grid, 0.5 * separation, width, momentum)
    return superpose(left, right, 1.0, 1.0)


def pure_density(psi: WaveFunction) -> DensityMatrix:
    """rho_ij = psi_i psi_j^*."""

    elements = np.outer(psi.amplitudes, np.conj(psi.amplitudes))
    return DensityMatrix(elements=elements, grid=psi.grid).check()


def mixture(states: Sequence[DensityMatrix], weights: Sequence[float]) -> DensityMatrix:
    """Convex combination of density matrices sharing one grid or dimension."""

    if not states or len(states) != len(weights):
        raise ValueError("mixture needs one weight per density matrix")
    probabilities = np.asarray(weights, dtype=float)
    if np.any(probabilities < 0.0) or abs(probabilities.sum() - 1.0) > 1.0e-12:
        raise ValueError("mixture weights must be non-negative and sum to 1")

    reference = states[0]
    for state in states[1:]:
        if state.grid != reference.grid or state.dim != reference.dim:
            raise GridMismatch("All mixture components must share a grid and dimension")

    elements = sum(weight * state.elements for weight, state in zip(probabilities, states))
    return DensityMatrix(elements=elements, grid=reference.grid).check()
