"""Measurement scheme and observables on density matrices."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateState, DimensionMismatch
from .models import DensityMatrix, EnvironmentOverlapMatrix


SLICE_FLOOR = 1.0e-12


def ideal_measurement_entangle(
    system: DensityMatrix, overlaps: EnvironmentOverlapMatrix
) -> DensityMatrix:
    """Reduced density matrix after an ideal von Neumann interaction.

    Each element is multiplied by the overlap of the environment states it is
    correlated with; the diagonal is copied unchanged.
    """

    if system.dim != overlaps.dim:
        raise DimensionMismatch(
            f"System dimension {system.dim} does not match overlap dimension {overlaps.dim}"
        )
    elements = system.elements * overlaps.overlaps
    np.fill_diagonal(elements, np.diag(system.elements))
    return DensityMatrix(elements=elements, grid=system.grid)


def _require_spatial(rho: DensityMatrix, operation: str) -> None:
    if not rho.is_spatial:
        raise DimensionMismatch(f"{operation} needs a density matrix on a spatial grid")


def coherence_length(rho: DensityMatrix) -> float:
    """Off-diagonal width of a spatial density matrix.

    For every anti-diagonal slice (fixed x_bar = (x + x')/2) the second moment of
    |rho| over xi = x - x' is taken; the slice widths are averaged with weight
    rho(x_bar, x_bar). A pure Gaussian packet of width sigma gives 2 sigma. The
    result never drops below one grid spacing.
    """

    _require_spatial(rho, "coherence_length")
    grid = rho.grid
    n = grid.n_points
    spacing = grid.spacing

    index = np.arange(n)
    slice_id = (index[:, None] + index[None, :]).ravel()
    xi_squared = (((index[:, None] - index[None, :]) * spacing) ** 2).ravel()
    magnitude = np.abs(rho.elements).ravel()

    n_slices = 2 * n - 1
    mass = np.bincount(slice_id, weights=magnitude, minlength=n_slices)
    moment = np.bincount(slice_id, weights=magnitude * xi_squared, minlength=n_slices)

    diagonal = np.clip(rho.diagonal(), 0.0, None)
    centre_weight = np.empty(n_slices)
    centre_weight[0::2] = diagonal
    centre_weight[1::2] = 0.5 * (diagonal[:-1] + diagonal[1:])

    usable = mass >= SLICE_FLOOR
    if not np.any(usable):
        raise DegenerateState("Every anti-diagonal slice of |rho| is below 1e-12")

    widths = np.sqrt(moment[usable] / mass[usable])
    weights = centre_weight[usable]
    if weights.sum() <= 0.0:
        raise DegenerateState("Density matrix has no positive diagonal weight")
    length = float(np.sum(widths * weights) / np.sum(weights))
    return max(length, spacing)


def position_distribution(rho: DensityMatrix) -> np.ndarray:
    """Diagonal rho(x, x); integrates to one against the grid spacing."""

    _require_spatial(rho, "position_distribution")
    return rho.diagonal()


def momentum_distribution(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Return (sorted wave numbers, normalised momentum weights)."""

    _require_spatial(rho, "momentum_distribution")
    n = rho.dim
    transformed = np.fft.ifft(np.fft.fft(rho.elements, axis=0), axis=1) * n
    weights = np.clip(np.real(np.diag(transformed)), 0.0, None)
    weights = weights / weights.sum()
    momenta = rho.grid.wave_numbers
    order = np.argsort(momenta)
    return momenta[order], weights[order]


def expectation_position(rho: DensityMatrix) -> float:
    _require_spatial(rho, "expectation_position")
    return float(np.sum(rho.grid.x * rho.diagonal()) * rho.grid.spacing)


def expectation_momentum(rho: DensityMatrix) -> float:
    momenta, weights = momentum_distribution(rho)
    return float(np.sum(momenta * weights))
