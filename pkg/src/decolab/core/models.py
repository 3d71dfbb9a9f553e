"""Value types shared by every decolab module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidDensity, InvalidOverlap, NonHermitianInput, TraceDrift, ZeroNorm
from .units import NATURAL, UNIT_SYSTEMS


NORM_TOLERANCE = 1.0e-10
HERMITICITY_TOLERANCE = 1.0e-10
CONTINUUM_TRACE_TOLERANCE = 1.0e-8
DISCRETE_TRACE_TOLERANCE = 1.0e-12
DIAGONAL_FLOOR = -1.0e-10


def _is_power_of_two(value: int) -> bool:
    return value > 0 and (value & (value - 1)) == 0


@dataclass(frozen=True, slots=True)
class SpatialGrid:
    """Uniform 1-D position grid; endpoints are both grid points."""

    n_points: int
    x_min: float
    x_max: float
    unit_system: str = NATURAL

    def __post_init__(self) -> None:
        if self.n_points < 8 or not _is_power_of_two(self.n_points):
            raise ValueError(f"n_points must be a power of two >= 8, got {self.n_points}")
        if not self.x_max > self.x_min:
            raise ValueError(f"x_max ({self.x_max}) must exceed x_min ({self.x_min})")
        if self.unit_system not in UNIT_SYSTEMS:
            raise ValueError(f"Unknown unit system '{self.unit_system}'")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def extent(self) -> float:
        return self.x_max - self.x_min

    @property
    def period(self) -> float:
        """Length of the periodic box seen by the discrete Fourier transform."""

        return self.n_points * self.spacing

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def wave_numbers(self) -> np.ndarray:
        """Angular wave numbers in FFT order."""

        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing)

    def separation_matrix(self) -> np.ndarray:
        """Matrix of x - x' over all grid pairs."""

        x = self.x
        return x[:, None] - x[None, :]


@dataclass(frozen=True, slots=True, eq=False)
class WaveFunction:
    """Normalised complex amplitudes on a spatial grid."""

    grid: SpatialGrid
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.grid.n_points,):
            raise ValueError(
                f"Expected {self.grid.n_points} amplitudes, got shape {amplitudes.shape}"
            )
        object.__setattr__(self, "amplitudes", amplitudes)
        norm = self.norm()
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"Wave function is not normalised (norm {norm:.3e})")

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------
    @classmethod
    def normalized(cls, grid: SpatialGrid, amplitudes: np.ndarray) -> "WaveFunction":
        values = np.asarray(amplitudes, dtype=complex)
        norm = float(np.sqrt(np.sum(np.abs(values) ** 2) * grid.spacing))
        if norm < 1.0e-12:
            raise ZeroNorm(f"Cannot normalise a state of norm {norm:.3e}")
        return cls(grid=grid, amplitudes=values / norm)

    # ------------------------------------------------------------------
    # Observables
    # ------------------------------------------------------------------
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.spacing)

    def probability_density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def mean_position(self) -> float:
        return float(np.sum(self.grid.x * self.probability_density()) * self.grid.spacing)

    def second_moment(self) -> float:
        return float(np.sum(self.grid.x ** 2 * self.probability_density()) * self.grid.spacing)

    def mean_momentum(self) -> float:
        weights = np.abs(np.fft.fft(self.amplitudes)) ** 2
        return float(np.sum(self.grid.wave_numbers * weights) / np.sum(weights))

    def inner(self, other: "WaveFunction") -> complex:
        return complex(np.sum(np.conj(self.amplitudes) * other.amplitudes) * self.grid.spacing)


@dataclass(slots=True, eq=False)
class DensityMatrix:
    """Density matrix over a spatial grid or a small discrete basis.

    Spatial matrices hold continuum values rho(x_i, x_j): traces and purities are
    weighted by the grid spacing. Discrete matrices use plain matrix traces.
    """

    elements: np.ndarray
    grid: Optional[SpatialGrid] = None
    label: str = field(default="")

    def __post_init__(self) -> None:
        elements = np.asarray(self.elements, dtype=complex)
        if elements.ndim != 2 or elements.shape[0] != elements.shape[1]:
            raise ValueError(f"Density matrix must be square, got shape {elements.shape}")
        if self.grid is not None and elements.shape[0] != self.grid.n_points:
            raise ValueError(
                f"Density matrix dimension {elements.shape[0]} does not match grid of {self.grid.n_points}"
            )
        self.elements = elements

    @property
    def dim(self) -> int:
        return int(self.elements.shape[0])

    @property
    def is_spatial(self) -> bool:
        return self.grid is not None

    @property
    def weight(self) -> float:
        return self.grid.spacing if self.grid is not None else 1.0

    # ------------------------------------------------------------------
    # Diagnostics
    # ------------------------------------------------------------------
    def trace(self) -> float:
        return float(np.real(np.trace(self.elements)) * self.weight)

    def trace_error(self) -> float:
        return abs(self.trace() - 1.0)

    def hermiticity_residue(self) -> float:
        return float(np.max(np.abs(self.elements - self.elements.conj().T)))

    def purity(self) -> float:
        return float(np.sum(np.abs(self.elements) ** 2) * self.weight ** 2)

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.elements)).copy()

    def check(self) -> "DensityMatrix":
        """Raise when hermiticity, unit trace or diagonal positivity fail."""

        residue = self.hermiticity_residue()
        if residue > HERMITICITY_TOLERANCE:
            raise NonHermitianInput(f"Hermiticity residue {residue:.3e} exceeds {HERMITICITY_TOLERANCE:.0e}")
        tolerance = CONTINUUM_TRACE_TOLERANCE if self.is_spatial else DISCRETE_TRACE_TOLERANCE
        if self.trace_error() > tolerance:
            raise TraceDrift(f"Trace {self.trace():.12f} deviates from 1 by more than {tolerance:.0e}")
        floor = float(np.min(self.diagonal()))
        if floor < DIAGONAL_FLOOR:
            raise InvalidDensity(f"Negative diagonal entry {floor:.3e}")
        return self

    def copy(self) -> "DensityMatrix":
        return DensityMatrix(elements=self.elements.copy(), grid=self.grid, label=self.label)


@dataclass(frozen=True, slots=True, eq=False)
class EnvironmentOverlapMatrix:
    """Overlaps <Phi_m|Phi_n> of the environment states correlated with basis states."""

    overlaps: np.ndarray

    def __post_init__(self) -> None:
        overlaps = np.asarray(self.overlaps, dtype=complex)
        if overlaps.ndim != 2 or overlaps.shape[0] != overlaps.shape[1]:
            raise InvalidOverlap(f"Overlap matrix must be square, got shape {overlaps.shape}")
        if not np.all(np.diag(overlaps) == 1.0):
            raise InvalidOverlap("Diagonal overlaps must be exactly 1")
        if np.max(np.abs(overlaps)) > 1.0 + 1.0e-12:
            raise InvalidOverlap("Overlap magnitudes must not exceed 1")
        if np.max(np.abs(overlaps - overlaps.conj().T)) > 1.0e-12:
            raise InvalidOverlap("Overlap matrix must be Hermitian")
        object.__setattr__(self, "overlaps", overlaps)

    @property
    def dim(self) -> int:
        return int(self.overlaps.shape[0])

    @classmethod
    def uniform(cls, dim: int, overlap: complex) -> "EnvironmentOverlapMatrix":
        """Every pair of distinct environment states shares one overlap."""

        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        upper = np.triu(np.full((dim, dim), overlap, dtype=complex), k=1)
        matrix = upper + upper.conj().T + np.eye(dim, dtype=complex)
        return cls(overlaps=matrix)
