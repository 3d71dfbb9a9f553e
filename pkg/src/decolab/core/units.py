"""Physical constants and unit-system tags used across decolab."""

from __future__ import annotations

from scipy import constants

# CGS values derived from CODATA (SI) so every module shares one source.
HBAR_CGS = constants.hbar * 1.0e7  # erg s
KB_CGS = constants.k * 1.0e7  # erg / K
C_CGS = constants.c * 1.0e2  # cm / s
G_REF_CGS = 981.0  # cm / s^2

NATURAL = "natural"
CGS = "cgs"
UNIT_SYSTEMS = (NATURAL, CGS)


def boltzmann_constant(unit_system: str) -> float:
    """Return k_B in the requested unit system (1 in natural units)."""

    if unit_system == NATURAL:
        return 1.0
    if unit_system == CGS:
        return KB_CGS
    raise ValueError(f"Unknown unit system '{unit_system}'. Expected one of: {', '.join(UNIT_SYSTEMS)}")
