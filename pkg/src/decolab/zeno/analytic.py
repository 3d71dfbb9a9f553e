"""Survival probabilities under free evolution and repeated ideal measurement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy import linalg


HERMITIAN_TOLERANCE = 1.0e-12


@dataclass(frozen=True, slots=True, eq=False)
class DecaySystem:
    """Finite-dimensional Hamiltonian with a prepared "undecayed" state."""

    hamiltonian: np.ndarray
    undecayed: np.ndarray

    def __post_init__(self) -> None:
        hamiltonian = np.asarray(self.hamiltonian, dtype=complex)
        undecayed = np.asarray(self.undecayed, dtype=complex)
        if hamiltonian.ndim != 2 or hamiltonian.shape[0] != hamiltonian.shape[1]:
            raise ValueError(f"Hamiltonian must be square, got shape {hamiltonian.shape}")
        if undecayed.shape != (hamiltonian.shape[0],):
            raise ValueError(f"State of shape {undecayed.shape} does not match dimension {hamiltonian.shape[0]}")
        if np.max(np.abs(hamiltonian - hamiltonian.conj().T)) > HERMITIAN_TOLERANCE:
            raise ValueError("Hamiltonian must be Hermitian")
        if abs(np.linalg.norm(undecayed) - 1.0) > HERMITIAN_TOLERANCE:
            raise ValueError("Undecayed state must have unit norm")
        object.__setattr__(self, "hamiltonian", hamiltonian)
        object.__setattr__(self, "undecayed", undecayed)

    @property
    def dim(self) -> int:
        return int(self.hamiltonian.shape[0])

    @classmethod
    def two_level(cls, coupling: float) -> "DecaySystem":
        """H = V sigma_x prepared in the first basis state."""

        return cls(
            hamiltonian=np.array([[0.0, coupling], [coupling, 0.0]]),
            undecayed=np.array([1.0, 0.0]),
        )


def survival_probability(sys: DecaySystem, t: float) -> float:
    """|<u| exp(-iHt) |u>|^2 from the eigendecomposition of H."""

    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    energies, vectors = linalg.eigh(sys.hamiltonian)
    weights = np.abs(vectors.conj().T @ sys.undecayed) ** 2
    amplitude = np.sum(weights * np.exp(-1j * energies * t))
    return float(min(1.0, max(0.0, abs(amplitude) ** 2)))


def energy_variance(sys: DecaySystem) -> float:
    u = sys.undecayed
    h_u = sys.hamiltonian @ u
    mean = np.vdot(u, h_u).real
    second = np.vdot(h_u, h_u).real
    return float(max(0.0, second - mean ** 2))


def repeated_measurement_survival(sys: DecaySystem, t: float, n: int) -> float:
    """P_N(t) = P(t/N)^N for N ideal projections onto the undecayed state."""

    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    return survival_probability(sys, t / n) ** n


def classical_decay_survival(decay_rate: float, t: float, n: int = 1) -> float:
    """Exponential survival; repeated observation leaves it unchanged."""

    if decay_rate < 0.0:
        raise ValueError(f"decay rate must be >= 0, got {decay_rate}")
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    return math.exp(-decay_rate * t)


def zeno_table(sys: DecaySystem, t: float, n_max: int) -> List[tuple[int, float]]:
    """(N, P_N(t)) for N = 1..n_max."""

    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return [(n, repeated_measurement_survival(sys, t, n)) for n in range(1, n_max + 1)]
