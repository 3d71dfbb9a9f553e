"""Decoherence versus relaxation time scales (CGS)."""

from __future__ import annotations

import math

from ..core.units import HBAR_CGS, KB_CGS


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0.0:
            raise ValueError(f"{name} must be > 0, got {value}")


def thermal_wavelength(mass: float, temperature: float) -> float:
    """lambda_th = hbar / sqrt(m k_B T) in cm."""

    _require_positive(mass=mass, temperature=temperature)
    return HBAR_CGS / math.sqrt(mass * KB_CGS * temperature)


def decoherence_relaxation_ratio(mass: float, temperature: float, separation: float) -> float:
    """m k_B T (dx)^2 / hbar^2, i.e. (dx / lambda_th)^2."""

    _require_positive(mass=mass, temperature=temperature, separation=separation)
    return mass * KB_CGS * temperature * separation ** 2 / HBAR_CGS ** 2
