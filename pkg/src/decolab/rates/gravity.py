"""Decoherence of the gravitational acceleration by a surrounding gas (CGS)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core.units import G_REF_CGS, KB_CGS


@dataclass(frozen=True, slots=True)
class GravityScenario:
    density: float
    particle_mass: float
    temperature: float
    box_size: float
    time: float

    def __post_init__(self) -> None:
        for name in ("density", "particle_mass", "temperature", "box_size", "time"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"{name} must be > 0, got {value}")


def gravity_rate(s: GravityScenario) -> float:
    """Gamma_g = n L^4 (pi m / (2 k_B T))^(3/2), evaluated numerically in CGS."""

    return s.density * s.box_size ** 4 * (math.pi * s.particle_mass / (2.0 * KB_CGS * s.temperature)) ** 1.5


def gravity_coherence_width(s: GravityScenario, g_ref: float = G_REF_CGS) -> float:
    """Relative width dg/g at which the damping exponent reaches one."""

    exposure = gravity_rate(s) * s.time
    if exposure == 0.0:
        return math.inf
    return 1.0 / (g_ref * math.sqrt(exposure))


def gravity_decoherence_factor(s: GravityScenario, delta_g: float) -> float:
    """exp(-Gamma_g t dg^2)."""

    return math.exp(-gravity_rate(s) * s.time * delta_g ** 2)
