"""Chiral two-level molecule: tunnelling between |L> and |R> under environmental monitoring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..core.errors import DimensionMismatch
from ..core.models import DensityMatrix


SMALL_KAPPA_T = 1.0e-8


@dataclass(frozen=True, slots=True)
class ChiralModel:
    """Tunnelling splitting Delta = E2 - E1 and dephasing rate in the L/R basis."""

    splitting: float
    monitoring_rate: float = 0.0

    def __post_init__(self) -> None:
        if not self.splitting > 0.0:
            raise ValueError(f"splitting must be > 0, got {self.splitting}")
        if self.monitoring_rate < 0.0:
            raise ValueError(f"monitoring rate must be >= 0, got {self.monitoring_rate}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.splitting


def energy_levels(splitting: float) -> tuple[float, float]:
    return -0.5 * splitting, 0.5 * splitting


def chiral_hamiltonian(splitting: float) -> np.ndarray:
    """diag(E1, E2) in the energy basis."""

    return np.diag(energy_levels(splitting)).astype(complex)


def chiral_states(splitting: float) -> tuple[np.ndarray, np.ndarray]:
    """(|L>, |R>) = ((|1> + |2>)/sqrt 2, (|1> - |2>)/sqrt 2) in the energy basis."""

    if not splitting > 0.0:
        raise ValueError(f"splitting must be > 0, got {splitting}")
    root = 1.0 / math.sqrt(2.0)
    return np.array([root, root], dtype=complex), np.array([root, -root], dtype=complex)


def _basis_change(splitting: float) -> np.ndarray:
    left, right = chiral_states(splitting)
    return np.column_stack([left, right])


def _damped_rotation(rate: float, splitting: float, t: float) -> tuple[float, float]:
    """e^{-rate t/2} cosh(kappa t) and e^{-rate t/2} sinh(kappa t)/kappa, kappa^2 = rate^2/4 - splitting^2."""

    kappa = complex(np.sqrt(complex(0.25 * rate ** 2 - splitting ** 2)))
    slow = np.exp((kappa - 0.5 * rate) * t)
    fast = np.exp(-(kappa + 0.5 * rate) * t)
    cosine = 0.5 * (slow + fast)
    if abs(kappa) * t < SMALL_KAPPA_T:
        sine = math.exp(-0.5 * rate * t) * t
    else:
        sine = (slow - fast) / (2.0 * kappa)
    return float(np.real(cosine)), float(np.real(sine))


def evolve_chiral(m: ChiralModel, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """Closed-form rho(t) in the energy basis.

    In the L/R basis H = -(Delta/2) sigma_x and monitoring damps the Bloch
    components x and y at the monitoring rate; y and z rotate into each other.
    """

    if rho0.dim != 2 or rho0.is_spatial:
        raise DimensionMismatch("evolve_chiral needs a 2x2 density matrix")
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")

    basis = _basis_change(m.splitting)
    chiral = basis.conj().T @ rho0.elements @ basis
    x = 2.0 * chiral[0, 1].real
    y = -2.0 * chiral[0, 1].imag
    z = (chiral[0, 0] - chiral[1, 1]).real

    rate = m.monitoring_rate
    delta = m.splitting
    cosine, sine = _damped_rotation(rate, delta, t)
    x_t = x * math.exp(-rate * t)
    y_t = cosine * y + sine * (-0.5 * rate * y + delta * z)
    z_t = cosine * z + sine * (-delta * y + 0.5 * rate * z)

    coherence = 0.5 * (x_t - 1j * y_t)
    evolved = np.array(
        [[0.5 * (1.0 + z_t), coherence], [np.conj(coherence), 0.5 * (1.0 - z_t)]],
        dtype=complex,
    )
    return DensityMatrix(elements=basis @ evolved @ basis.conj().T)


def left_population(rho: DensityMatrix, splitting: float = 1.0) -> float:
    """<L|rho|L>."""

    left, _ = chiral_states(splitting)
    return float(np.vdot(left, rho.elements @ left).real)


def chiral_series(m: ChiralModel, rho0: DensityMatrix, times: Sequence[float]) -> List[tuple[float, float]]:
    """(t, P_L(t)) for each requested time."""

    return [(float(t), left_population(evolve_chiral(m, rho0, t), m.splitting)) for t in times]


def left_handed_density(splitting: float = 1.0) -> DensityMatrix:
    left, _ = chiral_states(splitting)
    return DensityMatrix(elements=np.outer(left, left.conj())).check()
