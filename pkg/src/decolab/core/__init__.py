"""decolab core: grids, states, density matrices and measurement primitives"""

from .errors import DecolabError, ConfigError, NumericError, StorageError
from .measurement import (
    coherence_length,
    expectation_momentum,
    expectation_position,
    ideal_measurement_entangle,
    momentum_distribution,
    position_distribution,
)
from .models import DensityMatrix, EnvironmentOverlapMatrix, SpatialGrid, WaveFunction
from .states import build_gaussian_packet, cat_state, mixture, pure_density, superpose

__all__ = [
    "DecolabError",
    "ConfigError",
    "NumericError",
    "StorageError",
    "SpatialGrid",
    "WaveFunction",
    "DensityMatrix",
    "EnvironmentOverlapMatrix",
    "build_gaussian_packet",
    "cat_state",
    "superpose",
    "pure_density",
    "mixture",
    "ideal_measurement_entangle",
    "coherence_length",
    "position_distribution",
    "momentum_distribution",
    "expectation_position",
    "expectation_momentum",
]
