"""Wigner transform of spatial density matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft

from ..core.errors import DimensionMismatch, NonHermitianInput
from ..core.models import HERMITICITY_TOLERANCE, DensityMatrix, SpatialGrid


IMAGINARY_RESIDUE_TOLERANCE = 1.0e-8


@dataclass(slots=True, eq=False)
class WignerFunction:
    """Real phase-space function W[x_index, p_index] on the position grid and its conjugate momenta."""

    grid: SpatialGrid
    momenta: np.ndarray
    values: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def dp(self) -> float:
        return float(self.momenta[1] - self.momenta[0])

    def norm(self) -> float:
        return float(np.sum(self.values) * self.grid.spacing * self.dp)

    def min(self) -> float:
        return float(np.min(self.values))

    def variance_x(self) -> float:
        return _variance(self.x, marginal_position(self), self.grid.spacing)

    def variance_p(self) -> float:
        return _variance(self.momenta, marginal_momentum(self), self.dp)

    def at_position(self, x: float) -> np.ndarray:
        """Momentum slice at the grid point closest to x."""

        return self.values[int(np.argmin(np.abs(self.x - x)))]


def _variance(axis: np.ndarray, weights: np.ndarray, step: float) -> float:
    total = np.sum(weights) * step
    mean = np.sum(axis * weights) * step / total
    return float(np.sum((axis - mean) ** 2 * weights) * step / total)


def lag_indices(n_points: int) -> np.ndarray:
    """Half-separations j (in grid steps) in FFT order."""

    return np.rint(np.fft.fftfreq(n_points) * n_points).astype(int)


def wigner_transform(rho: DensityMatrix) -> WignerFunction:
    """W(x, p) = (1/pi) sum_y e^{2ipy} rho(x - y, x + y) dy on the grid lattice.

    Half-separations y are taken on the grid itself, so rho is only sampled at
    grid points; the momentum spacing is pi / (N dx).
    """

    if not rho.is_spatial:
        raise DimensionMismatch("wigner_transform needs a density matrix on a spatial grid")
    residue = rho.hermiticity_residue()
    if residue > HERMITICITY_TOLERANCE:
        raise NonHermitianInput(f"Hermiticity residue {residue:.3e} exceeds {HERMITICITY_TOLERANCE:.0e}")

    grid = rho.grid
    n = grid.n_points
    spacing = grid.spacing

    centre = np.arange(n)[:, None]
    lag = lag_indices(n)[None, :]
    rows = centre - lag
    cols = centre + lag
    inside = (rows >= 0) & (rows < n) & (cols >= 0) & (cols < n)
    samples = np.where(inside, rho.elements[np.clip(rows, 0, n - 1), np.clip(cols, 0, n - 1)], 0.0)

    spectrum = n * fft.ifft(samples, axis=1) * spacing / np.pi
    peak = float(np.max(np.abs(spectrum.real))) or 1.0
    imaginary = float(np.max(np.abs(spectrum.imag)))
    if imaginary > IMAGINARY_RESIDUE_TOLERANCE * peak:
        raise NonHermitianInput(f"Wigner transform has imaginary residue {imaginary:.3e}")

    momenta = fft.fftshift(np.pi * fft.fftfreq(n, d=spacing))
    values = fft.fftshift(spectrum.real, axes=1)
    return WignerFunction(grid=grid, momenta=momenta, values=np.ascontiguousarray(values))


def marginal_position(w: WignerFunction) -> np.ndarray:
    """Integral of W over momentum; equals the diagonal of rho."""

    return np.sum(w.values, axis=1) * w.dp


def marginal_momentum(w: WignerFunction) -> np.ndarray:
    """Integral of W over position."""

    return np.sum(w.values, axis=0) * w.grid.spacing
