"""Decoherence of a homogeneous electric field by a charged scalar field (natural units)."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..core.errors import RegimeError


@dataclass(frozen=True, slots=True)
class QedScenario:
    charge: float
    mass: float
    field: float
    volume: float
    time: float

    def __post_init__(self) -> None:
        if not self.mass > 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if not self.volume > 0.0:
            raise ValueError(f"volume must be > 0, got {self.volume}")
        if self.field < 0.0:
            raise ValueError(f"field must be >= 0, got {self.field}")
        if self.time < 0.0:
            raise ValueError(f"time must be >= 0, got {self.time}")

    @property
    def coupling(self) -> float:
        """|e| E."""

        return abs(self.charge) * self.field

    def at_time(self, time: float) -> "QedScenario":
        return replace(self, time=time)


def critical_field(mass: float, charge: float) -> float:
    """E_c = m^2 / e; pair creation dominates above it."""

    if charge == 0.0:
        return math.inf
    return mass ** 2 / abs(charge)


# ----------------------------------------------------------------------
# Exponents (-ln D)
# ----------------------------------------------------------------------
def qed_vacuum_exponent(s: QedScenario) -> float:
    ee = s.coupling
    prefactor = s.volume / (256.0 * math.pi ** 2)
    transient = prefactor * s.time * ee ** 3 / (s.mass ** 2 + (ee * s.time) ** 2)
    saturating = prefactor * ee ** 2 / s.mass * math.atan(ee * s.time / s.mass)
    return transient + saturating


def qed_pair_exponent(s: QedScenario) -> float:
    ee = s.coupling
    if ee == 0.0:
        return 0.0
    return s.volume * s.time * ee ** 2 / (4.0 * math.pi ** 2) * math.exp(-math.pi * s.mass ** 2 / ee)


# ----------------------------------------------------------------------
# Factors
# ----------------------------------------------------------------------
def qed_vacuum_factor(s: QedScenario) -> float:
    """Vacuum-polarisation contribution D_V."""

    return math.exp(-qed_vacuum_exponent(s))


def qed_pair_factor(s: QedScenario) -> float:
    """Pair-creation contribution D_PC."""

    return math.exp(-qed_pair_exponent(s))


def qed_vacuum_limit(s: QedScenario) -> float:
    """Late-time value of D_V."""

    return math.exp(-s.volume * s.coupling ** 2 / (512.0 * math.pi * s.mass))


def qed_dominance_ratio(s: QedScenario) -> float:
    """|ln D_V| / |ln D_PC| in the pair-creation regime."""

    e_c = critical_field(s.mass, s.charge)
    if s.field <= e_c:
        raise RegimeError(f"Field {s.field:g} does not exceed the critical field {e_c:g}")
    if s.time <= 0.0:
        raise RegimeError("The dominance ratio needs t > 0")
    return qed_vacuum_exponent(s) / qed_pair_exponent(s)
