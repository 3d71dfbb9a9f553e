"""Brute-force master-equation evolution through the full Liouvillian (small grids only)."""

from __future__ import annotations

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply

from ..core.errors import DimensionMismatch
from ..core.models import DensityMatrix, SpatialGrid
from .models import MasterModel


MAX_ORACLE_POINTS = 64


def spectral_second_derivative(grid: SpatialGrid) -> np.ndarray:
    """Dense d^2/dx^2 on the periodic box, matching the split-step kinetic factor."""

    k = grid.wave_numbers
    identity = np.eye(grid.n_points)
    return np.real(np.fft.ifft(-(k ** 2)[:, None] * np.fft.fft(identity, axis=0), axis=0))


def centered_first_derivative(grid: SpatialGrid) -> sparse.csr_matrix:
    n = grid.n_points
    offsets = np.full(n - 1, 1.0 / (2.0 * grid.spacing))
    return sparse.diags([offsets, -offsets], [1, -1], format="csr")


def liouvillian(model: MasterModel, grid: SpatialGrid) -> sparse.csr_matrix:
    """Generator L with d vec(rho)/dt = L vec(rho), vec taken row by row."""

    n = grid.n_points
    identity = sparse.identity(n, format="csr")
    xi = grid.separation_matrix().ravel()

    generator = -model.strength * sparse.diags(xi ** 2)
    if model.kinetic:
        kinetic = sparse.csr_matrix(-spectral_second_derivative(grid) / (2.0 * model.mass))
        generator = generator - 1j * (sparse.kron(kinetic, identity) - sparse.kron(identity, kinetic.T))
    if model.damping > 0.0:
        d1 = centered_first_derivative(grid)
        friction = sparse.kron(identity, d1) - sparse.kron(d1, identity)
        generator = generator + model.damping * sparse.diags(xi) @ friction
    return sparse.csr_matrix(generator)


def dense_master_evolution(model: MasterModel, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """rho(t) = exp(L t) rho0, evaluated with the action of the sparse matrix exponential."""

    grid = rho0.grid
    if grid is None:
        raise DimensionMismatch("dense_master_evolution needs a density matrix on a spatial grid")
    if grid.n_points > MAX_ORACLE_POINTS:
        raise ValueError(f"Oracle grids are limited to {MAX_ORACLE_POINTS} points, got {grid.n_points}")
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")

    vector = rho0.elements.astype(complex).ravel()
    evolved = expm_multiply(liouvillian(model, grid) * t, vector)
    return DensityMatrix(elements=evolved.reshape(grid.n_points, grid.n_points), grid=grid)
