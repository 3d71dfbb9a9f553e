"""Localisation-rate presets: environment derivations and the rate table."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from scipy.special import zeta

from ..core.errors import ConfigError, StorageError
from ..core.units import C_CGS, HBAR_CGS, KB_CGS
from .scattering import ScatteringEnvironment, localization_rate


logger = logging.getLogger(__name__)

PRESETS_PATH = Path(__file__).resolve().parent.parent / "resources" / "table1_presets.yaml"

GEOMETRIC = "geometric"
LONG_WAVELENGTH = "long_wavelength"
REGIMES = (GEOMETRIC, LONG_WAVELENGTH)

_ZETA3 = float(zeta(3.0))


# ----------------------------------------------------------------------
# Source derivations
# ----------------------------------------------------------------------
def thermal_gas_parameters(particle_mass: float, temperature: float, density: float) -> tuple[float, float]:
    """(wave number, flux) of a Maxwellian gas."""

    wave_number = math.sqrt(2.0 * math.pi * particle_mass * KB_CGS * temperature) / HBAR_CGS
    mean_speed = math.sqrt(8.0 * KB_CGS * temperature / (math.pi * particle_mass))
    return wave_number, density * mean_speed


def mean_photon_energy(temperature: float) -> float:
    return math.pi ** 4 / (30.0 * _ZETA3) * KB_CGS * temperature


def blackbody_parameters(temperature: float) -> tuple[float, float]:
    """(wave number, flux) of isotropic black-body radiation."""

    reduced = KB_CGS * temperature / (HBAR_CGS * C_CGS)
    number_density = 2.0 * _ZETA3 / math.pi ** 2 * reduced ** 3
    return mean_photon_energy(temperature) / (HBAR_CGS * C_CGS), number_density * C_CGS


def sunlight_parameters(temperature: float, irradiance: float) -> tuple[float, float]:
    """(wave number, flux) of direct sunlight with the given irradiance (erg cm^-2 s^-1)."""

    energy = mean_photon_energy(temperature)
    return energy / (HBAR_CGS * C_CGS), irradiance / energy


def effective_cross_section(wave_number: float, size: float) -> tuple[float, str]:
    """Geometric cross-section, dipole suppressed when the object is smaller than the wavelength."""

    geometric = math.pi * size ** 2
    ka = wave_number * size
    if ka >= 1.0:
        return geometric, GEOMETRIC
    return geometric * ka ** 4, LONG_WAVELENGTH


def source_parameters(source: Dict[str, Any]) -> tuple[float, float]:
    kind = source.get("kind")
    temperature = float(source["temperature_K"])
    if kind == "thermal_gas":
        return thermal_gas_parameters(float(source["particle_mass_g"]), temperature, float(source["density_cm3"]))
    if kind == "blackbody":
        return blackbody_parameters(temperature)
    if kind == "sunlight":
        return sunlight_parameters(temperature, float(source["irradiance"]))
    raise ConfigError(f"Unknown preset source kind '{kind}'", key="kind")


# ----------------------------------------------------------------------
# Preset records
# ----------------------------------------------------------------------
@dataclass(slots=True)
class PresetCell:
    """One table cell: an environment acting on an object of a given size."""

    key: str
    label: str
    size_cm: float
    environment: ScatteringEnvironment
    regime: str
    reference_log10: float
    source: Dict[str, Any] = field(default_factory=dict)

    def derive(self) -> "PresetCell":
        """Recompute the cell from its source description."""

        wave_number, flux = source_parameters(self.source)
        sigma, regime = effective_cross_section(wave_number, self.size_cm)
        return PresetCell(
            key=self.key,
            label=self.label,
            size_cm=self.size_cm,
            environment=ScatteringEnvironment(wave_number=wave_number, flux=flux, sigma_eff=sigma, label=self.label),
            regime=regime,
            reference_log10=self.reference_log10,
            source=dict(self.source),
        )


@dataclass(slots=True)
class Table1Row:
    environment: str
    size_cm: float
    computed: float
    reference_log10: float
    regime: str

    @property
    def computed_log10(self) -> float:
        return math.log10(self.computed)

    @property
    def log10_deviation(self) -> float:
        return self.computed_log10 - self.reference_log10

    def to_dict(self) -> Dict[str, Any]:
        return {
            "environment": self.environment,
            "size_cm": self.size_cm,
            "computed": self.computed,
            "computed_log10": self.computed_log10,
            "paper_log10": self.reference_log10,
            "log10_deviation": self.log10_deviation,
            "regime": self.regime,
        }


def load_presets(path: Optional[str | Path] = None) -> List[PresetCell]:
    """Read the preset data file; the bundled file is used when no path is given."""

    preset_path = Path(path) if path else PRESETS_PATH
    try:
        with preset_path.open("r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except OSError as exc:
        raise StorageError(f"Cannot read preset file {preset_path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"Malformed preset file {preset_path}: {exc}") from exc

    cells: List[PresetCell] = []
    for entry in data.get("environments", []):
        for cell in entry.get("cells", []):
            try:
                regime = cell["regime"]
                if regime not in REGIMES:
                    raise ConfigError(f"Unknown regime '{regime}' in {entry.get('key')}", key="regime")
                cells.append(
                    PresetCell(
                        key=entry["key"],
                        label=entry["label"],
                        size_cm=float(cell["size_cm"]),
                        environment=ScatteringEnvironment(
                            wave_number=float(cell["wave_number"]),
                            flux=float(cell["flux"]),
                            sigma_eff=float(cell["sigma_eff"]),
                            label=entry["label"],
                        ),
                        regime=regime,
                        reference_log10=float(cell["reference_log10"]),
                        source=dict(entry.get("source", {})),
                    )
                )
            except KeyError as exc:
                raise ConfigError(f"Preset entry is missing field {exc}", key=str(exc.args[0])) from exc
            except ValueError as exc:
                if isinstance(exc, ConfigError):
                    raise
                raise ConfigError(f"Invalid preset value in {entry.get('key')}: {exc}") from exc

    if not cells:
        raise ConfigError(f"Preset file {preset_path} defines no cells")
    logger.debug(f"Loaded {len(cells)} preset cells from {preset_path}")
    return cells


def table1_generate(path: Optional[str | Path] = None) -> List[Table1Row]:
    """Localisation rate for every preset cell next to its reference order of magnitude."""

    return [
        Table1Row(
            environment=cell.label,
            size_cm=cell.size_cm,
            computed=localization_rate(cell.environment),
            reference_log10=cell.reference_log10,
            regime=cell.regime,
        )
        for cell in load_presets(path)
    ]
